#include "overlap/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <set>
#include <utility>

#include "overlap/errors.hpp"

namespace overlap {

int Frame::find(const std::string& name) const {
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (names_[j] == name) return static_cast<int>(j);
  }
  return -1;
}

const std::vector<double>& Frame::col(const std::string& name,
                                      const std::string& where) const {
  const int j = find(name);
  if (j < 0) throw MissingColumn(name, where);
  return cols_[static_cast<std::size_t>(j)];
}

void Frame::add(std::string name, std::vector<double> values) {
  if (!names_.empty() && values.size() != rows_)
    throw SchemaMismatch("column '" + name + "' has " + std::to_string(values.size()) +
                         " rows, frame has " + std::to_string(rows_));
  rows_ = values.size();
  names_.push_back(std::move(name));
  cols_.push_back(std::move(values));
}

Frame Frame::select_rows(const std::vector<std::size_t>& idx) const {
  Frame out;
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    std::vector<double> v(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) v[i] = cols_[j][idx[i]];
    out.add(names_[j], std::move(v));
  }
  return out;
}

std::size_t ExperimentalSample::arm_size(int t) const {
  std::size_t c = 0;
  for (int ti : treatment) c += (ti == t);
  return c;
}

namespace {

// Strict numeric parse: the full field must be a finite number.
std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + s.size()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

void check_unique_header(const csv::Table& table, const std::string& where) {
  std::set<std::string> seen;
  for (const auto& name : table.header) {
    if (!seen.insert(name).second)
      throw SchemaMismatch("duplicate column '" + name + "' in " + where);
  }
}

// Parses a mapped column strictly; any blank or unparsable cell is an error.
std::vector<double> parse_strict(const csv::Table& table, const std::string& name,
                                 const std::string& where) {
  const int j = table.find(name);
  if (j < 0) throw MissingColumn(name, where);
  std::vector<double> out(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto v = parse_number(table.rows[i][static_cast<std::size_t>(j)]);
    if (!v) throw NonFiniteValue(name, i + 1);
    out[i] = *v;
  }
  return out;
}

// Extras are kept only when every non-blank cell parses as a number; blanks
// become NaN and are rejected later if a subgroup rule touches them.
std::optional<std::vector<double>> parse_lenient(const csv::Table& table,
                                                 std::size_t j) {
  std::vector<double> out(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const std::string& cell = table.rows[i][j];
    if (cell.empty()) {
      out[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const auto v = parse_number(cell);
    if (!v) return std::nullopt;
    out[i] = *v;
  }
  return out;
}

}  // namespace

ExperimentalSample experimental_from_table(const csv::Table& table,
                                           const ExperimentalSchema& schema,
                                           const std::string& where) {
  check_unique_header(table, where);
  {
    std::set<std::string> cov(schema.covariates.begin(), schema.covariates.end());
    if (cov.size() != schema.covariates.size())
      throw SchemaMismatch("covariate list contains duplicate names");
  }

  ExperimentalSample exp;
  const auto t_raw = parse_strict(table, schema.treatment, where);
  exp.outcome = parse_strict(table, schema.outcome, where);
  exp.treatment.resize(t_raw.size());
  for (std::size_t i = 0; i < t_raw.size(); ++i) {
    if (t_raw[i] != 0.0 && t_raw[i] != 1.0)
      throw NonBinaryTreatment(schema.treatment, i + 1, t_raw[i]);
    exp.treatment[i] = static_cast<int>(t_raw[i]);
  }

  exp.frame.add(schema.treatment, t_raw);
  exp.frame.add(schema.outcome, exp.outcome);
  for (const auto& name : schema.covariates) {
    if (name == schema.treatment || name == schema.outcome)
      throw SchemaMismatch("covariate '" + name + "' collides with a mapped column");
    exp.frame.add(name, parse_strict(table, name, where));
    exp.covariate_names.push_back(name);
  }
  if (!schema.weights_column.empty()) {
    exp.user_weights = parse_strict(table, schema.weights_column, where);
    for (std::size_t i = 0; i < exp.user_weights.size(); ++i) {
      if (exp.user_weights[i] <= 0.0)
        throw NonFiniteValue(schema.weights_column, i + 1);
    }
    if (!exp.frame.has(schema.weights_column))
      exp.frame.add(schema.weights_column, exp.user_weights);
  }

  // Retain numeric extras so subgroup rules can reference them.
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    const std::string& name = table.header[j];
    if (exp.frame.has(name)) continue;
    if (auto col = parse_lenient(table, j)) exp.frame.add(name, std::move(*col));
  }

  if (exp.arm_size(1) < 2) throw EmptyArm(1);
  if (exp.arm_size(0) < 2) throw EmptyArm(0);
  return exp;
}

ExperimentalSample load_experimental(const std::string& path,
                                     const ExperimentalSchema& schema) {
  return experimental_from_table(csv::read_file(path), schema, path);
}

TargetPopulation target_from_table(const csv::Table& table, const TargetSchema& schema,
                                   const std::string& where) {
  check_unique_header(table, where);
  TargetPopulation target;
  for (const auto& name : schema.covariates) {
    if (table.find(name) < 0)
      throw SchemaMismatch("target population is missing weighting covariate '" +
                           name + "' (" + where + ")");
    target.frame.add(name, parse_strict(table, name, where));
    target.covariate_names.push_back(name);
  }
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    const std::string& name = table.header[j];
    if (target.frame.has(name)) continue;
    if (auto col = parse_lenient(table, j)) {
      target.frame.add(name, std::move(*col));
      target.extra_names.push_back(name);
    }
  }
  return target;
}

TargetPopulation load_target(const std::string& path, const TargetSchema& schema) {
  return target_from_table(csv::read_file(path), schema, path);
}

ExperimentalSample make_experimental(std::vector<int> treatment,
                                     std::vector<double> outcome,
                                     std::vector<std::string> covariate_names,
                                     std::vector<std::vector<double>> covariate_cols) {
  ExperimentalSample exp;
  exp.treatment = std::move(treatment);
  exp.outcome = std::move(outcome);
  exp.covariate_names = std::move(covariate_names);
  std::vector<double> t_raw(exp.treatment.size());
  for (std::size_t i = 0; i < exp.treatment.size(); ++i) {
    t_raw[i] = static_cast<double>(exp.treatment[i]);
  }
  exp.frame.add("T", std::move(t_raw));
  exp.frame.add("Y", exp.outcome);
  for (std::size_t j = 0; j < exp.covariate_names.size(); ++j) {
    exp.frame.add(exp.covariate_names[j], std::move(covariate_cols[j]));
  }
  if (exp.arm_size(1) < 2) throw EmptyArm(1);
  if (exp.arm_size(0) < 2) throw EmptyArm(0);
  return exp;
}

TargetPopulation make_target(std::vector<std::string> covariate_names,
                             std::vector<std::vector<double>> covariate_cols) {
  TargetPopulation target;
  target.covariate_names = std::move(covariate_names);
  for (std::size_t j = 0; j < target.covariate_names.size(); ++j) {
    target.frame.add(target.covariate_names[j], std::move(covariate_cols[j]));
  }
  return target;
}

ExperimentalSample resample(const ExperimentalSample& exp,
                            const std::vector<std::size_t>& idx) {
  ExperimentalSample out;
  out.frame = exp.frame.select_rows(idx);
  out.covariate_names = exp.covariate_names;
  out.treatment.resize(idx.size());
  out.outcome.resize(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.treatment[i] = exp.treatment[idx[i]];
    out.outcome[i] = exp.outcome[idx[i]];
  }
  if (!exp.user_weights.empty()) {
    out.user_weights.resize(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      out.user_weights[i] = exp.user_weights[idx[i]];
  }
  return out;
}

TargetPopulation resample(const TargetPopulation& target,
                          const std::vector<std::size_t>& idx) {
  TargetPopulation out;
  out.frame = target.frame.select_rows(idx);
  out.covariate_names = target.covariate_names;
  out.extra_names = target.extra_names;
  return out;
}

namespace {

csv::Table frame_to_table(const Frame& frame) {
  csv::Table t;
  t.header = frame.names();
  t.rows.resize(frame.rows());
  for (std::size_t i = 0; i < frame.rows(); ++i) {
    t.rows[i].resize(frame.cols());
    for (std::size_t j = 0; j < frame.cols(); ++j) {
      t.rows[i][j] = csv::format_double(frame.col(j)[i]);
    }
  }
  return t;
}

}  // namespace

csv::Table to_table(const ExperimentalSample& exp, const ExperimentalSchema&) {
  return frame_to_table(exp.frame);
}

csv::Table to_table(const TargetPopulation& target) {
  return frame_to_table(target.frame);
}

bool Predicate::eval(double x) const {
  switch (op) {
    case Op::kLt: return x < value;
    case Op::kLe: return x <= value;
    case Op::kGt: return x > value;
    case Op::kGe: return x >= value;
    case Op::kEq: return x == value;
    case Op::kNe: return x != value;
  }
  return false;
}

Predicate::Op parse_op(const std::string& token) {
  if (token == "<") return Predicate::Op::kLt;
  if (token == "<=") return Predicate::Op::kLe;
  if (token == ">") return Predicate::Op::kGt;
  if (token == ">=") return Predicate::Op::kGe;
  if (token == "==" || token == "=") return Predicate::Op::kEq;
  if (token == "!=") return Predicate::Op::kNe;
  throw ConfigError("unknown comparator '" + token + "'");
}

std::string op_name(Predicate::Op op) {
  switch (op) {
    case Predicate::Op::kLt: return "<";
    case Predicate::Op::kLe: return "<=";
    case Predicate::Op::kGt: return ">";
    case Predicate::Op::kGe: return ">=";
    case Predicate::Op::kEq: return "==";
    case Predicate::Op::kNe: return "!=";
  }
  return "?";
}

namespace {

std::vector<std::uint8_t> eval_rule(const SubgroupRule& rule, const Frame& frame,
                                    const std::string& where) {
  std::vector<std::uint8_t> flags(frame.rows(), 1);
  if (!rule.column.empty()) {
    const auto& col = frame.col(rule.column, where);
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (std::isnan(col[i])) throw NonFiniteValue(rule.column, i + 1);
      if (col[i] != 0.0 && col[i] != 1.0)
        throw SchemaMismatch("subgroup '" + rule.name + "' column '" + rule.column +
                             "' is not a 0/1 flag in " + where);
      flags[i] = col[i] == 1.0;
    }
    return flags;
  }
  if (rule.predicates.empty())
    throw ConfigError("subgroup '" + rule.name + "' has neither column nor predicates");
  for (const auto& pred : rule.predicates) {
    const auto& col = frame.col(pred.column, where);
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (std::isnan(col[i])) throw NonFiniteValue(pred.column, i + 1);
      flags[i] = flags[i] && pred.eval(col[i]);
    }
  }
  return flags;
}

double share(const std::vector<std::uint8_t>& flags) {
  if (flags.empty()) return 0.0;
  double s = 0;
  for (auto f : flags) s += f;
  return s / static_cast<double>(flags.size());
}

}  // namespace

SubgroupFlags build_subgroup(const SubgroupRule& rule, const ExperimentalSample& exp,
                             const TargetPopulation& target) {
  SubgroupFlags out;
  out.name = rule.name;
  out.experimental = eval_rule(rule, exp.frame, "experimental sample");
  out.target = eval_rule(rule, target.frame, "target population");
  out.experimental_share = share(out.experimental);
  out.target_share = share(out.target);
  if (out.experimental_share <= 0.0 || out.experimental_share >= 1.0)
    throw DegenerateSubgroup(rule.name);
  return out;
}

}  // namespace overlap
