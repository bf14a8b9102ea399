#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fc/measures.hpp"
#include "fc/operator_core.hpp"
#include "fc/symbol.hpp"

namespace fc::detail {

using json = nlohmann::json;

/// A JSON value with its pointer inside the document; accessors throw ConfigInvalid
/// naming the pointer of the offending field.
class Node {
 public:
  Node(const json& j, std::string ptr) : j_(&j), ptr_(std::move(ptr)) {}

  const json& raw() const { return *j_; }
  const std::string& pointer() const { return ptr_; }
  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }
  Node at(const std::string& key) const;
  Node at(std::size_t i) const;
  std::size_t size() const;

  double num() const;
  long long integer() const;
  std::uint64_t u64() const;
  bool boolean() const;
  std::string str() const;
  cplx complex() const;
  std::vector<double> nums() const;
  std::vector<cplx> complexes() const;

  double num(const std::string& key, double dflt) const { return has(key) ? at(key).num() : dflt; }
  long long integer(const std::string& key, long long dflt) const { return has(key) ? at(key).integer() : dflt; }
  std::string str(const std::string& key, const std::string& dflt) const { return has(key) ? at(key).str() : dflt; }
  bool boolean(const std::string& key, bool dflt) const { return has(key) ? at(key).boolean() : dflt; }

  [[noreturn]] void invalid(const std::string& msg) const;

 private:
  const json* j_;
  std::string ptr_;
};

json parse_text(const std::string& text, const std::string& what);

CMatrix parse_matrix(const Node& n);
MatrixOperator build_operator(const Node& n);
Region build_region(const Node& n);
Symbol build_symbol(const Node& n);
ExpWeightedMeasure build_measure(const Node& n);
BVFunction build_bv(const Node& n);

json to_json(cplx z);
json to_json(const CMatrix& m);
/// Non-finite values become the strings "inf", "-inf", "nan" so the output stays valid JSON.
json number(double x);

}  // namespace fc::detail
