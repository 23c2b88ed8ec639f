#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "atem/precision_real.hpp"

namespace atem {

enum class TableId { t1, t2, t3 };

std::string_view to_string(TableId id) noexcept;
/// Accepts "t1".."t3", case-insensitive.
std::optional<TableId> table_id_from_string(std::string_view name) noexcept;

/// One published value. `group` names the problem instance within the table
/// ("g=0.1" for the quartic sweep, empty when the table has one problem).
struct ReferenceEntry {
  std::string group;
  int state = 0;
  std::string value;
  /// Source column, e.g. "ATEM", "exact", "SUSY".
  std::string column;
};

struct ReferenceTable {
  TableId id = TableId::t1;
  std::string title;
  /// Column the harness validates against.
  std::string validated_column;
  std::vector<ReferenceEntry> entries;
  /// Known anomalies in the published data.
  std::vector<std::string> notes;

  [[nodiscard]] std::vector<ReferenceEntry> column(std::string_view name, std::string_view group = {}) const;
  /// Distinct groups in table order.
  [[nodiscard]] std::vector<std::string> groups() const;
};

/// Immutable, transcribed verbatim (digit-group spaces removed).
const ReferenceTable& reference_table(TableId id);

/// Required significant digits for a validated entry.
int required_digits(TableId id, std::string_view group);

/// Largest k such that |computed - reference| is below one unit in the k-th
/// significant digit of `reference`. Returns 0 when even the first digit
/// disagrees. A zero reference has no significant digits; the result is then
/// floor(-log10 |computed|) (capped at `cap`), i.e. absolute digits.
int matching_digits(const Real& computed, std::string_view reference, int cap = 60);

}  // namespace atem
