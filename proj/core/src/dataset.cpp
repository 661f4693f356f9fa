#include "cu/dataset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cu {

using nlohmann::json;

Dataset::Dataset(AttributeSchema schema, std::vector<Instance> instances)
    : schema_(std::move(schema)), instances_(std::move(instances)) {
  if (schema_.dimensions.empty())
    throw ValidationError("schema must have at least one dimension");
  {
    std::set<std::string> names;
    for (const auto& dim : schema_.dimensions) {
      if (!names.insert(dim.name).second)
        throw ValidationError("duplicate dimension name: " + dim.name);
      std::set<std::string> vals(dim.values.begin(), dim.values.end());
      if (vals.size() != dim.values.size())
        throw ValidationError("duplicate value label in dimension " + dim.name);
      if (dim.values.empty())
        throw ValidationError("dimension without values: " + dim.name);
    }
  }
  total_weight_ = 0;
  for (int i = 0; i < static_cast<int>(instances_.size()); ++i) {
    const Instance& inst = instances_[i];
    if (static_cast<int>(inst.values.size()) != schema_.dimension_count())
      throw ValidationError("instance " + inst.id +
                            ": wrong number of values");
    for (int dim = 0; dim < schema_.dimension_count(); ++dim) {
      int v = inst.values[dim];
      if (v < 0 || v >= schema_.cardinality(dim))
        throw ValidationError("instance " + inst.id +
                              ": value index out of range");
    }
    if (inst.weight < 0)
      throw ValidationError("instance " + inst.id + ": negative weight");
    if (!by_id_.emplace(inst.id, i).second)
      throw ValidationError("duplicate instance id: " + inst.id);
    total_weight_ += inst.weight;
  }
  if (total_weight_ <= 0)
    throw ValidationError("dataset must have positive total weight");
}

std::optional<int> Dataset::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

Category::Category(const Dataset& d, std::vector<int> indices)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()),
                 indices_.end());
  if (!indices_.empty() &&
      (indices_.front() < 0 || indices_.back() >= d.size()))
    throw ValidationError("category member index out of range");
}

Category Category::from_ids(const Dataset& d,
                            const std::vector<std::string>& ids) {
  std::vector<int> idx;
  idx.reserve(ids.size());
  for (const auto& id : ids) {
    auto found = d.find(id);
    if (!found) throw ValidationError("unknown instance id: " + id);
    idx.push_back(*found);
  }
  return Category(d, std::move(idx));
}

bool Category::contains(int index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

Rational Category::weight(const Dataset& d) const {
  Rational w = 0;
  for (int i : indices_) w += d.instances()[i].weight;
  return w;
}

Category Category::complement(const Dataset& d) const {
  std::vector<int> rest;
  rest.reserve(d.size() - size());
  for (int i = 0; i < d.size(); ++i)
    if (!contains(i)) rest.push_back(i);
  return Category(d, std::move(rest));
}

std::vector<std::string> Category::member_ids(const Dataset& d) const {
  std::vector<std::string> ids;
  ids.reserve(indices_.size());
  for (int i : indices_) ids.push_back(d.instances()[i].id);
  return ids;
}

Hierarchy::Hierarchy(const Dataset& d, std::vector<HierarchyLevel> levels)
    : levels_(std::move(levels)) {
  if (levels_.empty()) throw ValidationError("hierarchy has no levels");
  size_t prev_size = 0;
  for (size_t li = 0; li < levels_.size(); ++li) {
    const auto& level = levels_[li];
    std::vector<int> seen(d.size(), 0);
    for (const auto& nc : level.categories) {
      if (nc.category.empty())
        throw ValidationError("empty category in level " + level.name);
      for (int i : nc.category.indices()) {
        if (seen[i]++)
          throw ValidationError("level " + level.name +
                                " is not a partition: instance " +
                                d.instances()[i].id + " appears twice");
      }
    }
    for (int i = 0; i < d.size(); ++i)
      if (!seen[i])
        throw ValidationError("level " + level.name +
                              " is not a partition: instance " +
                              d.instances()[i].id + " missing");
    if (li > 0) {
      if (level.categories.size() <= prev_size)
        throw ValidationError("level sizes must strictly increase with depth");
      // strict nesting: each category fits inside one category above
      for (const auto& nc : level.categories) {
        const NamedCategory* parent = nullptr;
        for (const auto& up : levels_[li - 1].categories) {
          if (up.category.contains(nc.category.indices().front())) {
            parent = &up;
            break;
          }
        }
        for (int i : nc.category.indices()) {
          if (!parent->category.contains(i))
            throw ValidationError("nesting violation: category " + nc.name +
                                  " crosses categories of the level above");
        }
      }
    }
    prev_size = level.categories.size();
  }
}

// --- CSV ------------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

}  // namespace

Dataset parse_dataset(std::string_view csv_text) {
  std::vector<std::vector<std::string>> rows;
  size_t pos = 0;
  int line_no = 0;
  while (pos <= csv_text.size()) {
    size_t nl = csv_text.find('\n', pos);
    std::string_view line = nl == std::string_view::npos
                                ? csv_text.substr(pos)
                                : csv_text.substr(pos, nl - pos);
    ++line_no;
    if (!trim(line).empty()) rows.push_back(split_csv_line(line));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (rows.empty()) throw ValidationError("empty dataset file");
  const auto& header = rows.front();
  int id_col = -1, weight_col = -1;
  std::vector<int> dim_cols;
  AttributeSchema schema;
  for (int c = 0; c < static_cast<int>(header.size()); ++c) {
    if (header[c] == "id") {
      if (id_col >= 0) throw ValidationError("duplicate id column");
      id_col = c;
    } else if (header[c] == "weight") {
      if (weight_col >= 0) throw ValidationError("duplicate weight column");
      weight_col = c;
    } else {
      dim_cols.push_back(c);
      schema.dimensions.push_back({header[c], {}});
    }
  }
  if (dim_cols.empty())
    throw ValidationError("dataset has no attribute columns");
  if (rows.size() < 2) throw ValidationError("dataset has no instances");

  std::vector<std::map<std::string, int>> value_index(dim_cols.size());
  std::vector<Instance> instances;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size())
      throw ValidationError("ragged row " + std::to_string(r + 1) + ": got " +
                            std::to_string(row.size()) + " cells, expected " +
                            std::to_string(header.size()));
    Instance inst;
    inst.id = id_col >= 0 ? row[id_col] : std::to_string(r);
    if (inst.id.empty())
      throw ValidationError("empty id in row " + std::to_string(r + 1));
    if (weight_col >= 0) {
      try {
        inst.weight = parse_rational(row[weight_col]);
      } catch (const std::exception&) {
        throw ValidationError("bad weight in row " + std::to_string(r + 1) +
                              ": " + row[weight_col]);
      }
      if (inst.weight < 0)
        throw ValidationError("negative weight in row " +
                              std::to_string(r + 1));
    }
    for (size_t dc = 0; dc < dim_cols.size(); ++dc) {
      const std::string& cell = row[dim_cols[dc]];
      if (cell.empty())
        throw ValidationError("empty cell in row " + std::to_string(r + 1) +
                              ", column " + header[dim_cols[dc]]);
      auto [it, inserted] = value_index[dc].emplace(
          cell, static_cast<int>(schema.dimensions[dc].values.size()));
      if (inserted) schema.dimensions[dc].values.push_back(cell);
      inst.values.push_back(it->second);
    }
    instances.push_back(std::move(inst));
  }
  return Dataset(std::move(schema), std::move(instances));
}

std::string serialize_dataset(const Dataset& d) {
  std::ostringstream out;
  out << "id,weight";
  for (const auto& dim : d.schema().dimensions) out << "," << dim.name;
  out << "\n";
  for (const auto& inst : d.instances()) {
    out << inst.id << "," << format_rational(inst.weight);
    for (int dim = 0; dim < d.schema().dimension_count(); ++dim)
      out << "," << d.schema().dimensions[dim].values[inst.values[dim]];
    out << "\n";
  }
  return out.str();
}

// --- hierarchy / category JSON -------------------------------------------

namespace {

json parse_json(std::string_view text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw ValidationError(std::string("malformed JSON in ") + what);
  return j;
}

}  // namespace

Hierarchy parse_hierarchy(std::string_view json_text, const Dataset& d) {
  json j = parse_json(json_text, "hierarchy file");
  if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array())
    throw ValidationError("hierarchy file must be {\"levels\": [...]}");
  std::vector<HierarchyLevel> levels;
  for (const auto& jl : j["levels"]) {
    HierarchyLevel level;
    level.name = jl.value("name", "level-" + std::to_string(levels.size() + 1));
    if (!jl.contains("categories") || !jl["categories"].is_array())
      throw ValidationError("level " + level.name + " has no categories array");
    for (const auto& jc : jl["categories"]) {
      NamedCategory nc;
      nc.name = jc.value(
          "name", "cat-" + std::to_string(level.categories.size() + 1));
      if (!jc.contains("members") || !jc["members"].is_array())
        throw ValidationError("category " + nc.name + " has no members array");
      std::vector<std::string> ids;
      for (const auto& m : jc["members"]) {
        if (!m.is_string())
          throw ValidationError("category " + nc.name +
                                ": member ids must be strings");
        ids.push_back(m.get<std::string>());
      }
      nc.category = Category::from_ids(d, ids);
      level.categories.push_back(std::move(nc));
    }
    levels.push_back(std::move(level));
  }
  return Hierarchy(d, std::move(levels));
}

std::string serialize_hierarchy(const Hierarchy& h, const Dataset& d) {
  json j;
  j["levels"] = json::array();
  for (const auto& level : h.levels()) {
    json jl;
    jl["name"] = level.name;
    jl["categories"] = json::array();
    for (const auto& nc : level.categories) {
      json jc;
      jc["name"] = nc.name;
      jc["members"] = nc.category.member_ids(d);
      jl["categories"].push_back(std::move(jc));
    }
    j["levels"].push_back(std::move(jl));
  }
  return j.dump(2) + "\n";
}

Category parse_category(std::string_view json_text, const Dataset& d) {
  json j = parse_json(json_text, "category file");
  if (!j.is_object() || !j.contains("members") || !j["members"].is_array())
    throw ValidationError("category file must be {\"members\": [ids]}");
  std::vector<std::string> ids;
  for (const auto& m : j["members"]) {
    if (!m.is_string())
      throw ValidationError("category member ids must be strings");
    ids.push_back(m.get<std::string>());
  }
  return Category::from_ids(d, ids);
}

// --- probabilities --------------------------------------------------------

std::vector<Rational> exact_conditional(const Dataset& d, int dim,
                                        const Category* c) {
  if (dim < 0 || dim >= d.schema().dimension_count())
    throw ValidationError("dimension index out of range");
  std::vector<Rational> mass(d.schema().cardinality(dim), Rational(0));
  Rational total = 0;
  auto add = [&](const Instance& inst) {
    mass[inst.values[dim]] += inst.weight;
    total += inst.weight;
  };
  if (c == nullptr) {
    for (const auto& inst : d.instances()) add(inst);
  } else {
    if (c->empty()) throw ValidationError("empty category");
    for (int i : c->indices()) add(d.instances()[i]);
  }
  if (total == 0) throw ValidationError("category has zero weight");
  for (auto& m : mass) m /= total;
  return mass;
}

Distribution conditional_distribution(const Dataset& d, int dim,
                                      const Category* c) {
  Distribution dist;
  dist.dimension = dim;
  for (const auto& m : exact_conditional(d, dim, c))
    dist.probabilities.push_back(to_double(m));
  return dist;
}

}  // namespace cu
