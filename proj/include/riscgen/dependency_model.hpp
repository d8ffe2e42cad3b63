#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "riscgen/error.hpp"
#include "riscgen/protection_table.hpp"
#include "riscgen/random.hpp"

namespace riscgen {

struct FitMetadata {
  std::size_t rows = 0;
  std::uint64_t seed = 0;
  double pseudo_count = 0.5;

  friend bool operator==(const FitMetadata&, const FitMetadata&) = default;
};

/// One column of the tree: its parent (none for the root) and
/// P(column = 1 | parent = 0), P(column = 1 | parent = 1).
/// For the root both entries hold the marginal.
struct TreeNode {
  std::optional<std::size_t> parent;
  std::array<double, 2> p_one{0.0, 0.0};

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Chow-Liu tree over binary columns, sampled ancestrally.
class DependencyModel {
 public:
  DependencyModel(ColumnSchema schema, std::vector<TreeNode> nodes, FitMetadata metadata = {})
      : schema_(std::move(schema)), nodes_(std::move(nodes)), metadata_(metadata) {
    if (nodes_.size() != schema_.size()) {
      throw Error(ErrorCode::SchemaMismatch, "model has " + std::to_string(nodes_.size()) + " nodes for " +
                                                 std::to_string(schema_.size()) + " columns");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      for (double p : nodes_[i].p_one) {
        if (!(p >= 0.0 && p <= 1.0)) {
          throw Error(ErrorCode::InvalidConfig, "probability out of [0,1] at column '" + schema_.name(i) + "'");
        }
      }
      if (nodes_[i].parent && *nodes_[i].parent >= nodes_.size()) {
        throw Error(ErrorCode::InvalidConfig, "parent index out of range at column '" + schema_.name(i) + "'");
      }
    }
    order_ = topological_order();
  }

  const ColumnSchema& schema() const noexcept { return schema_; }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const FitMetadata& metadata() const noexcept { return metadata_; }
  /// Columns in parent-before-child order.
  const std::vector<std::size_t>& order() const noexcept { return order_; }
  std::size_t root() const noexcept { return order_.front(); }

  /// (parent, child) pairs in sampling order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (auto c : order_) {
      if (nodes_[c].parent) out.emplace_back(*nodes_[c].parent, c);
    }
    return out;
  }

  /// P(column = 1) under the model, propagated down the tree.
  std::vector<double> marginals() const {
    std::vector<double> m(nodes_.size(), 0.0);
    for (auto c : order_) {
      const auto& n = nodes_[c];
      if (!n.parent) m[c] = n.p_one[0];
      else m[c] = (1.0 - m[*n.parent]) * n.p_one[0] + m[*n.parent] * n.p_one[1];
    }
    return m;
  }

  double expected_row_sum() const {
    auto m = marginals();
    return std::accumulate(m.begin(), m.end(), 0.0);
  }

  Row sample_row(Rng& rng) const {
    Row row(nodes_.size(), 0);
    for (auto c : order_) {
      const auto& n = nodes_[c];
      const double p = n.parent ? n.p_one[row[*n.parent]] : n.p_one[0];
      row[c] = rng.bernoulli(p) ? 1 : 0;
    }
    return row;
  }

  friend bool operator==(const DependencyModel& a, const DependencyModel& b) {
    return a.schema_ == b.schema_ && a.nodes_ == b.nodes_ && a.metadata_ == b.metadata_;
  }

 private:
  std::vector<std::size_t> topological_order() const {
    std::vector<std::vector<std::size_t>> children(nodes_.size());
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].parent) children[*nodes_[i].parent].push_back(i);
      else roots.push_back(i);
    }
    if (roots.size() != 1) {
      throw Error(ErrorCode::InvalidConfig, "model structure must have exactly one root, found " +
                                                std::to_string(roots.size()));
    }
    std::vector<std::size_t> order{roots.front()};
    for (std::size_t head = 0; head < order.size(); ++head) {
      for (auto c : children[order[head]]) order.push_back(c);
    }
    if (order.size() != nodes_.size()) throw Error(ErrorCode::InvalidConfig, "model structure contains a cycle");
    return order;
  }

  ColumnSchema schema_;
  std::vector<TreeNode> nodes_;
  FitMetadata metadata_;
  std::vector<std::size_t> order_;
};

namespace detail {

inline double mutual_information(std::size_t n00, std::size_t n01, std::size_t n10, std::size_t n11) {
  const double n = static_cast<double>(n00 + n01 + n10 + n11);
  const double px[2] = {(n00 + n01) / n, (n10 + n11) / n};
  const double py[2] = {(n00 + n10) / n, (n01 + n11) / n};
  const double pxy[2][2] = {{n00 / n, n01 / n}, {n10 / n, n11 / n}};
  double mi = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      if (pxy[x][y] > 0.0) mi += pxy[x][y] * std::log(pxy[x][y] / (px[x] * py[y]));
    }
  }
  return std::max(mi, 0.0);
}

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace detail

/// Fits a maximum-mutual-information spanning tree rooted at the first
/// column. Conditional tables are maximum likelihood; a parent state with no
/// support gets `pseudo_count` on both outcomes (i.e. 0.5/0.5).
inline DependencyModel fit(const ProtectionTable& table, std::uint64_t seed, double pseudo_count = 0.5) {
  const std::size_t cols = table.column_count();
  const std::size_t n = table.row_count();
  if (cols == 0 || n == 0) throw Error(ErrorCode::EmptyTable, "cannot fit an empty table");
  if (n < 2) throw Error(ErrorCode::EmptyTable, "fit needs at least 2 rows, got 1");

  // counts[i][j] = rows with (col i = 1, col j = 1); ones[i] = rows with col i = 1.
  std::vector<std::size_t> ones(cols, 0);
  std::vector<std::vector<std::size_t>> both(cols, std::vector<std::size_t>(cols, 0));
  std::vector<std::size_t> active;
  for (const auto& row : table.rows()) {
    active.clear();
    for (std::size_t c = 0; c < cols; ++c) {
      if (row[c]) active.push_back(c);
    }
    for (std::size_t a = 0; a < active.size(); ++a) {
      ++ones[active[a]];
      for (std::size_t b = a; b < active.size(); ++b) ++both[active[a]][active[b]];
    }
  }
  auto joint11 = [&](std::size_t i, std::size_t j) { return i <= j ? both[i][j] : both[j][i]; };

  struct Edge {
    double mi;
    std::size_t a, b;
  };
  const auto& names = table.schema().names();
  std::vector<Edge> edges;
  edges.reserve(cols * (cols - 1) / 2);
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = i + 1; j < cols; ++j) {
      const std::size_t n11 = joint11(i, j);
      const std::size_t n10 = ones[i] - n11;
      const std::size_t n01 = ones[j] - n11;
      const std::size_t n00 = n - n11 - n10 - n01;
      edges.push_back({detail::mutual_information(n00, n01, n10, n11), i, j});
    }
  }
  auto key = [&](const Edge& e) {
    const auto& x = names[e.a];
    const auto& y = names[e.b];
    return x < y ? std::pair{&x, &y} : std::pair{&y, &x};
  };
  std::sort(edges.begin(), edges.end(), [&](const Edge& l, const Edge& r) {
    if (l.mi != r.mi) return l.mi > r.mi;
    auto kl = key(l);
    auto kr = key(r);
    if (*kl.first != *kr.first) return *kl.first < *kr.first;
    return *kl.second < *kr.second;
  });

  std::vector<std::vector<std::size_t>> adjacency(cols);
  detail::DisjointSets sets(cols);
  for (const auto& e : edges) {
    if (sets.unite(e.a, e.b)) {
      adjacency[e.a].push_back(e.b);
      adjacency[e.b].push_back(e.a);
    }
  }

  std::vector<TreeNode> nodes(cols);
  std::vector<bool> seen(cols, false);
  std::vector<std::size_t> queue{0};
  seen[0] = true;
  const double p_root = static_cast<double>(ones[0]) / static_cast<double>(n);
  nodes[0].p_one = {p_root, p_root};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t parent = queue[head];
    auto next = adjacency[parent];
    std::sort(next.begin(), next.end());
    for (auto child : next) {
      if (seen[child]) continue;
      seen[child] = true;
      queue.push_back(child);
      const std::size_t n11 = joint11(parent, child);
      const std::size_t parent_one = ones[parent];
      const std::size_t parent_zero = n - parent_one;
      const std::size_t n01 = ones[child] - n11;  // parent 0, child 1
      auto conditional = [&](std::size_t hits, std::size_t support) {
        if (support == 0) return pseudo_count / (2.0 * pseudo_count);
        return static_cast<double>(hits) / static_cast<double>(support);
      };
      nodes[child].parent = parent;
      nodes[child].p_one = {conditional(n01, parent_zero), conditional(n11, parent_one)};
    }
  }
  return DependencyModel(table.schema(), std::move(nodes), FitMetadata{n, seed, pseudo_count});
}

/// Draws n rows; row r uses the stream (seed, "sample", r), so the result
/// does not depend on `workers`.
inline ProtectionTable sample(const DependencyModel& model, std::size_t n, std::uint64_t seed,
                              unsigned workers = 1) {
  if (n == 0) throw Error(ErrorCode::InvalidConfig, "sample size must be >= 1");
  std::vector<Row> rows(n);
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      Rng rng = Rng::stream(seed, "sample", r);
      rows[r] = model.sample_row(rng);
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers == 1) {
    run(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(run, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  return ProtectionTable(model.schema(), std::move(rows));
}

// JSON persistence.

inline nlohmann::json to_json(const DependencyModel& model) {
  const auto& schema = model.schema();
  nlohmann::json nodes = nlohmann::json::array();
  for (auto c : model.order()) {
    const auto& n = model.nodes()[c];
    nodes.push_back({{"column", schema.name(c)},
                     {"parent", n.parent ? nlohmann::json(schema.name(*n.parent)) : nlohmann::json(nullptr)},
                     {"p_one_given_parent", {n.p_one[0], n.p_one[1]}}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (auto [p, c] : model.edges()) edges.push_back({{"parent", schema.name(p)}, {"child", schema.name(c)}});
  return {{"format", "riscgen-dependency-model"},
          {"version", 1},
          {"schema", schema.names()},
          {"root", schema.name(model.root())},
          {"edges", edges},
          {"nodes", nodes},
          {"metadata",
           {{"rows", model.metadata().rows},
            {"seed", model.metadata().seed},
            {"pseudo_count", model.metadata().pseudo_count}}}};
}

inline DependencyModel model_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format") != "riscgen-dependency-model") {
      throw Error(ErrorCode::ParseError, "not a dependency model document");
    }
    ColumnSchema schema(doc.at("schema").get<std::vector<std::string>>());
    std::vector<TreeNode> nodes(schema.size());
    std::vector<bool> seen(schema.size(), false);
    auto lookup = [&](const std::string& name) {
      auto idx = schema.index_of(name);
      if (!idx) throw Error(ErrorCode::SchemaMismatch, "model references unknown column '" + name + "'");
      return *idx;
    };
    for (const auto& node : doc.at("nodes")) {
      const auto c = lookup(node.at("column").get<std::string>());
      if (seen[c]) throw Error(ErrorCode::ParseError, "column listed twice in model nodes");
      seen[c] = true;
      if (!node.at("parent").is_null()) nodes[c].parent = lookup(node.at("parent").get<std::string>());
      const auto p = node.at("p_one_given_parent").get<std::vector<double>>();
      if (p.size() != 2) throw Error(ErrorCode::ParseError, "conditional table must have 2 entries");
      nodes[c].p_one = {p[0], p[1]};
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw Error(ErrorCode::ParseError, "model nodes do not cover every schema column");
    }
    const auto& meta = doc.at("metadata");
    FitMetadata metadata{meta.at("rows").get<std::size_t>(), meta.at("seed").get<std::uint64_t>(),
                         meta.value("pseudo_count", 0.5)};
    return DependencyModel(std::move(schema), std::move(nodes), metadata);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed model JSON: ") + e.what());
  }
}

inline void save_model(const DependencyModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << to_json(model).dump(2) << '\n';
}

inline DependencyModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, "'" + path + "': " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace riscgen
