#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cu/rational.hpp"

namespace cu {

// Raised for any malformed input or violated structural invariant. The CLI
// maps it to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what)
      : std::runtime_error(what) {}
};

struct AttributeDimension {
  std::string name;
  std::vector<std::string> values;  // first-appearance order
};

struct AttributeSchema {
  std::vector<AttributeDimension> dimensions;

  int dimension_count() const { return static_cast<int>(dimensions.size()); }
  int cardinality(int dim) const {
    return static_cast<int>(dimensions[dim].values.size());
  }
};

struct Instance {
  std::string id;
  std::vector<int> values;  // one value index per schema dimension
  Rational weight = 1;
};

// Immutable after construction; all measure code reads it concurrently.
class Dataset {
 public:
  Dataset(AttributeSchema schema, std::vector<Instance> instances);

  const AttributeSchema& schema() const { return schema_; }
  const std::vector<Instance>& instances() const { return instances_; }
  int size() const { return static_cast<int>(instances_.size()); }
  const Rational& total_weight() const { return total_weight_; }

  // index of instance by id, or nullopt
  std::optional<int> find(std::string_view id) const;

 private:
  AttributeSchema schema_;
  std::vector<Instance> instances_;
  Rational total_weight_;
  std::unordered_map<std::string, int> by_id_;
};

// A subset of one dataset, held as sorted instance indices.
class Category {
 public:
  Category() = default;
  Category(const Dataset& d, std::vector<int> indices);
  static Category from_ids(const Dataset& d,
                           const std::vector<std::string>& ids);

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool is_population(const Dataset& d) const { return size() == d.size(); }
  bool contains(int index) const;
  Rational weight(const Dataset& d) const;
  Category complement(const Dataset& d) const;
  std::vector<std::string> member_ids(const Dataset& d) const;

 private:
  std::vector<int> indices_;  // sorted, unique
};

struct NamedCategory {
  std::string name;
  Category category;
};

struct HierarchyLevel {
  std::string name;
  std::vector<NamedCategory> categories;
};

// Strictly nested multi-level categorization, most general level first.
class Hierarchy {
 public:
  Hierarchy(const Dataset& d, std::vector<HierarchyLevel> levels);

  const std::vector<HierarchyLevel>& levels() const { return levels_; }
  int level_count() const { return static_cast<int>(levels_.size()); }

 private:
  std::vector<HierarchyLevel> levels_;
};

struct Distribution {
  int dimension = 0;
  std::vector<double> probabilities;
};

// --- ingestion / serialization -------------------------------------------

// CSV: first row = header, optional reserved columns `id` and `weight`,
// cells must not contain commas.
Dataset parse_dataset(std::string_view csv_text);
std::string serialize_dataset(const Dataset& d);

// JSON: {"levels":[{"name":...,"categories":[{"name":...,"members":[ids]}]}]}
Hierarchy parse_hierarchy(std::string_view json_text, const Dataset& d);
std::string serialize_hierarchy(const Hierarchy& h, const Dataset& d);

// JSON: {"name":..., "members":[ids]}
Category parse_category(std::string_view json_text, const Dataset& d);

// --- probabilities --------------------------------------------------------

// P(f_i | c) for one dimension; pass nullptr for the population marginal.
Distribution conditional_distribution(const Dataset& d, int dim,
                                      const Category* c = nullptr);
std::vector<Rational> exact_conditional(const Dataset& d, int dim,
                                        const Category* c = nullptr);

}  // namespace cu
