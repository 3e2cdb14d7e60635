#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "overlap/csv.hpp"

namespace overlap {

// Column-major numeric storage shared by both dataset types. Binary
// covariates are encoded as 0/1 doubles so downstream math has one path.
class Frame {
 public:
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return names_.size(); }
  int find(const std::string& name) const;
  bool has(const std::string& name) const { return find(name) >= 0; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<double>& col(std::size_t idx) const { return cols_[idx]; }
  // Throws MissingColumn when absent. `where` names the dataset in messages.
  const std::vector<double>& col(const std::string& name,
                                 const std::string& where = "dataset") const;
  void add(std::string name, std::vector<double> values);
  // Row subset (with repetition) of every column; used by the bootstrap.
  Frame select_rows(const std::vector<std::size_t>& idx) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> cols_;
  std::size_t rows_ = 0;
};

struct ExperimentalSchema {
  std::string treatment = "T";
  std::string outcome = "Y";
  std::vector<std::string> covariates;
  std::string weights_column;  // empty: fit transport weights from data
};

struct ExperimentalSample {
  Frame frame;  // treatment/outcome/covariates plus numeric extras
  std::vector<int> treatment;
  std::vector<double> outcome;
  std::vector<std::string> covariate_names;
  std::vector<double> user_weights;  // raw; empty unless schema named a column

  std::size_t size() const { return treatment.size(); }
  std::size_t arm_size(int t) const;
  const std::vector<double>& covariate(const std::string& name) const {
    return frame.col(name, "experimental sample");
  }
};

struct TargetSchema {
  std::vector<std::string> covariates;  // must all be present in the file
};

struct TargetPopulation {
  Frame frame;  // covariates plus numeric extras (candidate subgroup flags)
  std::vector<std::string> covariate_names;
  std::vector<std::string> extra_names;

  std::size_t size() const { return frame.rows(); }
  const std::vector<double>& covariate(const std::string& name) const {
    return frame.col(name, "target population");
  }
};

ExperimentalSample load_experimental(const std::string& path,
                                     const ExperimentalSchema& schema);
ExperimentalSample experimental_from_table(const csv::Table& table,
                                           const ExperimentalSchema& schema,
                                           const std::string& where);

TargetPopulation load_target(const std::string& path, const TargetSchema& schema);
TargetPopulation target_from_table(const csv::Table& table, const TargetSchema& schema,
                                   const std::string& where);

// In-memory constructors for synthetic data (tests, simulations, bootstrap).
ExperimentalSample make_experimental(std::vector<int> treatment,
                                     std::vector<double> outcome,
                                     std::vector<std::string> covariate_names,
                                     std::vector<std::vector<double>> covariate_cols);
TargetPopulation make_target(std::vector<std::string> covariate_names,
                             std::vector<std::vector<double>> covariate_cols);

ExperimentalSample resample(const ExperimentalSample& exp,
                            const std::vector<std::size_t>& idx);
TargetPopulation resample(const TargetPopulation& target,
                          const std::vector<std::size_t>& idx);

// Serialization (round-trips numeric values bit-exactly).
csv::Table to_table(const ExperimentalSample& exp, const ExperimentalSchema& schema);
csv::Table to_table(const TargetPopulation& target);

struct Predicate {
  enum class Op { kLt, kLe, kGt, kGe, kEq, kNe };
  std::string column;
  Op op;
  double value = 0.0;

  bool eval(double x) const;
};

Predicate::Op parse_op(const std::string& token);
std::string op_name(Predicate::Op op);

// A named subgroup: either a 0/1 flag column present in both datasets, or a
// conjunction of threshold predicates over shared columns.
struct SubgroupRule {
  std::string name;
  std::string column;                  // empty when predicates are used
  std::vector<Predicate> predicates;   // ANDed together
};

struct SubgroupFlags {
  std::string name;
  std::vector<std::uint8_t> experimental;
  std::vector<std::uint8_t> target;
  double experimental_share = 0.0;
  double target_share = 0.0;
};

// Evaluates the rule on both datasets. The experimental share must be
// strictly inside (0,1); otherwise the subgroup cannot be benchmarked.
SubgroupFlags build_subgroup(const SubgroupRule& rule, const ExperimentalSample& exp,
                             const TargetPopulation& target);

}  // namespace overlap
