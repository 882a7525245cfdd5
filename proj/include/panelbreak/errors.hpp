#pragma once

#include <stdexcept>
#include <string>

namespace panelbreak {

enum class ErrorKind {
  // configuration / API misuse -> exit 2
  config_error,
  invalid_config,
  invalid_dof,
  // data -> exit 3
  missing_column,
  duplicate_key,
  parse_error,
  empty_sample,
  unknown_variable,
  non_positive_scale,
  unknown_factor_label,
  invalid_input,
  insufficient_distinct_values,
  too_few_rows_per_bin,
  // estimation -> exit 4
  rank_deficient,
  singular_design,
  too_few_clusters,
  no_valid_candidates,
  all_candidates_invalid,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Machine-readable process exit code: 2 config, 3 data, 4 estimation.
  int exit_code() const noexcept {
    switch (kind_) {
      case ErrorKind::config_error:
      case ErrorKind::invalid_config:
      case ErrorKind::invalid_dof:
        return 2;
      case ErrorKind::missing_column:
      case ErrorKind::duplicate_key:
      case ErrorKind::parse_error:
      case ErrorKind::empty_sample:
      case ErrorKind::unknown_variable:
      case ErrorKind::non_positive_scale:
      case ErrorKind::unknown_factor_label:
      case ErrorKind::invalid_input:
      case ErrorKind::insufficient_distinct_values:
      case ErrorKind::too_few_rows_per_bin:
        return 3;
      default:
        return 4;
    }
  }
};

}  // namespace panelbreak
