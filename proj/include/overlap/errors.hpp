#pragma once

#include <stdexcept>
#include <string>

namespace overlap {

// Error families map 1:1 onto CLI exit codes.
enum class ErrorFamily : int {
  kIo = 2,
  kValidation = 3,
  kConvergence = 4,
  kDegenerate = 5,
};

// Base for all typed errors. `code` is a stable machine-readable tag;
// `what()` carries the human-readable message with offending column/row.
class Error : public std::runtime_error {
 public:
  Error(ErrorFamily family, std::string code, const std::string& message)
      : std::runtime_error(message), family_(family), code_(std::move(code)) {}

  ErrorFamily family() const noexcept { return family_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorFamily family_;
  std::string code_;
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(ErrorFamily::kIo, "io", msg) {}
};

struct CsvParseError : Error {
  CsvParseError(const std::string& path, std::size_t line, const std::string& msg)
      : Error(ErrorFamily::kIo, "csv_parse",
              path + ":" + std::to_string(line) + ": " + msg) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg)
      : Error(ErrorFamily::kValidation, "config", msg) {}
};

struct MissingColumn : Error {
  MissingColumn(const std::string& column, const std::string& where)
      : Error(ErrorFamily::kValidation, "missing_column",
              "missing column '" + column + "' in " + where),
        column(column) {}
  std::string column;
};

struct NonBinaryTreatment : Error {
  NonBinaryTreatment(const std::string& column, std::size_t row, double value)
      : Error(ErrorFamily::kValidation, "non_binary_treatment",
              "treatment column '" + column + "' has non-binary value " +
                  std::to_string(value) + " at row " + std::to_string(row)),
        row(row) {}
  std::size_t row;  // 1-based data row
};

struct NonFiniteValue : Error {
  NonFiniteValue(const std::string& column, std::size_t row)
      : Error(ErrorFamily::kValidation, "non_finite_value",
              "column '" + column + "' has a missing or non-finite value at row " +
                  std::to_string(row)),
        column(column), row(row) {}
  std::string column;
  std::size_t row;  // 1-based data row
};

struct SchemaMismatch : Error {
  explicit SchemaMismatch(const std::string& msg)
      : Error(ErrorFamily::kValidation, "schema_mismatch", msg) {}
};

struct EmptyArm : Error {
  explicit EmptyArm(int arm)
      : Error(ErrorFamily::kDegenerate, "empty_arm",
              std::string("treatment arm T=") + std::to_string(arm) +
                  " has fewer than 2 units") {}
};

struct DegenerateSubgroup : Error {
  explicit DegenerateSubgroup(const std::string& name)
      : Error(ErrorFamily::kDegenerate, "degenerate_subgroup",
              "subgroup '" + name +
                  "' is constant in the experimental sample and cannot be benchmarked"),
        name(name) {}
  std::string name;
};

struct EmptyArmWithinSubgroup : Error {
  EmptyArmWithinSubgroup(const std::string& name, const std::string& cell)
      : Error(ErrorFamily::kDegenerate, "empty_arm_within_subgroup",
              "subgroup '" + name + "' has no units in cell " + cell),
        name(name) {}
  std::string name;
};

struct AllSubgroupsDegenerate : Error {
  AllSubgroupsDegenerate()
      : Error(ErrorFamily::kDegenerate, "all_subgroups_degenerate",
              "every requested subgroup is degenerate in the experimental sample") {}
};

struct NonConvergence : Error {
  explicit NonConvergence(int iterations)
      : Error(ErrorFamily::kConvergence, "non_convergence",
              "selection model did not converge after " +
                  std::to_string(iterations) + " iterations"),
        iterations(iterations) {}
  int iterations;
};

// An observed overlap violation in X: some covariate profile perfectly
// predicts membership, so selection odds are unbounded.
struct SeparationDetected : Error {
  SeparationDetected()
      : Error(ErrorFamily::kConvergence, "separation",
              "selection model separation: a covariate profile perfectly predicts "
              "sample membership (observed overlap violation)") {}
};

struct ZeroWeightSum : Error {
  ZeroWeightSum()
      : Error(ErrorFamily::kDegenerate, "zero_weight_sum", "weights sum to zero") {}
};

struct ZeroWeightSumInArm : Error {
  explicit ZeroWeightSumInArm(int arm)
      : Error(ErrorFamily::kDegenerate, "zero_weight_sum_in_arm",
              std::string("weights sum to zero within arm T=") + std::to_string(arm)) {}
};

struct CorrOfConstant : Error {
  CorrOfConstant()
      : Error(ErrorFamily::kDegenerate, "corr_of_constant",
              "correlation undefined: one of the vectors has zero weighted variance") {}
};

struct ParamOutOfRange : Error {
  explicit ParamOutOfRange(const std::string& msg)
      : Error(ErrorFamily::kDegenerate, "param_out_of_range", msg) {}
};

struct BoundViolation : Error {
  explicit BoundViolation(const std::string& msg)
      : Error(ErrorFamily::kDegenerate, "bound_violation", msg) {}
};

struct NonPositiveVariance : Error {
  NonPositiveVariance()
      : Error(ErrorFamily::kDegenerate, "non_positive_variance",
              "heterogeneity variance must be strictly positive") {}
};

}  // namespace overlap
