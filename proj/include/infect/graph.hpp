#ifndef INFECT_GRAPH_HPP
#define INFECT_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace infect {

using NodeId = std::size_t;

/// Directed weighted edge `src -> dst`. Stored as A[dst][src].
struct Edge {
    NodeId src;
    NodeId dst;
    double weight;

    friend bool operator==(const Edge &, const Edge &) = default;
};

/**
 * Immutable non-negative weighted adjacency structure.
 *
 * Entry A[i][j] holds the weight of the edge from node j to node i, so a
 * node's in-neighbours live in its row. Storage is compressed by row with
 * ascending column indices inside each row; `multiply` sums every row in
 * that order, which makes the product bit-reproducible.
 */
class Graph {
public:
    Graph(std::size_t n, std::span<const Edge> edges) : n_(n) {
        if (n == 0)
            throw Error(ErrorKind::InvalidParams, "graph needs at least one node");

        for (const Edge &e : edges) {
            if (e.src >= n || e.dst >= n)
                throw Error(ErrorKind::IndexOutOfRange,
                            "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                                ") outside [0, " + std::to_string(n) + ")");
            if (std::isnan(e.weight) || std::isinf(e.weight))
                throw Error(ErrorKind::InvalidWeight,
                            "non-finite weight on edge (" + std::to_string(e.src) + ", " +
                                std::to_string(e.dst) + ")");
            if (e.weight < 0.0)
                throw Error(ErrorKind::NegativeWeight,
                            "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                                ") has weight " + std::to_string(e.weight));
        }

        // Sort by (row, col) = (dst, src); duplicates are summed in input order.
        std::vector<std::size_t> order(edges.size());
        for (std::size_t k = 0; k < order.size(); ++k)
            order[k] = k;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (edges[a].dst != edges[b].dst)
                return edges[a].dst < edges[b].dst;
            return edges[a].src < edges[b].src;
        });

        row_ptr_.assign(n + 1, 0);
        NodeId last_row = 0;
        for (std::size_t k : order) {
            const Edge &e = edges[k];
            if (!col_.empty() && last_row == e.dst && col_.back() == e.src) {
                values_.back() += e.weight;
                continue;
            }
            col_.push_back(e.src);
            values_.push_back(e.weight);
            last_row = e.dst;
            ++row_ptr_[e.dst + 1];
        }
        for (std::size_t i = 0; i < n; ++i)
            row_ptr_[i + 1] += row_ptr_[i];
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t nnz() const noexcept { return values_.size(); }

    /// y = A x, rows summed in ascending column order.
    void multiply(std::span<const double> x, std::span<double> y) const {
        if (x.size() != n_ || y.size() != n_)
            throw Error(ErrorKind::DimensionMismatch,
                        "vector length " + std::to_string(x.size()) + " vs graph size " +
                            std::to_string(n_));
        for (std::size_t i = 0; i < n_; ++i) {
            double sum = 0.0;
            for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
                sum += values_[k] * x[col_[k]];
            y[i] = sum;
        }
    }

    /// Entry A[row][col]; zero when absent.
    double weight(NodeId row, NodeId col) const {
        if (row >= n_ || col >= n_)
            throw Error(ErrorKind::IndexOutOfRange, "entry outside matrix");
        auto first = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
        auto last = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
        auto it = std::lower_bound(first, last, col);
        if (it == last || *it != col)
            return 0.0;
        return values_[static_cast<std::size_t>(it - col_.begin())];
    }

    /// Visit stored entries row by row as (row, col, value).
    template <class F>
    void for_each_entry(F &&f) const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
                f(i, col_[k], values_[k]);
    }

    /// Stored entries as edges (src = column, dst = row), sorted by (src, dst).
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(nnz());
        for_each_entry([&](NodeId row, NodeId col, double w) { out.push_back({col, row, w}); });
        std::sort(out.begin(), out.end(), [](const Edge &a, const Edge &b) {
            return a.src != b.src ? a.src < b.src : a.dst < b.dst;
        });
        return out;
    }

    /// Column sums, i.e. the total out-weight of every node.
    std::vector<double> out_weights() const {
        std::vector<double> sums(n_, 0.0);
        for_each_entry([&](NodeId, NodeId col, double w) { sums[col] += w; });
        return sums;
    }

    friend bool operator==(const Graph &a, const Graph &b) {
        return a.n_ == b.n_ && a.row_ptr_ == b.row_ptr_ && a.col_ == b.col_ &&
               a.values_ == b.values_;
    }

private:
    std::size_t n_;
    std::vector<std::size_t> row_ptr_;
    std::vector<NodeId> col_;
    std::vector<double> values_;
};

inline Graph build_graph(std::size_t n, std::span<const Edge> edges) { return Graph(n, edges); }

inline Graph build_graph(std::size_t n, std::initializer_list<Edge> edges) {
    return Graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

inline std::vector<double> matvec(const Graph &g, std::span<const double> x) {
    std::vector<double> y(g.size());
    g.multiply(x, y);
    return y;
}

/// Same graph with every node relabelled `v -> perm[v]`.
inline Graph permute(const Graph &g, std::span<const NodeId> perm) {
    if (perm.size() != g.size())
        throw Error(ErrorKind::DimensionMismatch, "permutation length differs from graph size");
    std::vector<Edge> edges = g.edges();
    for (Edge &e : edges) {
        e.src = perm[e.src];
        e.dst = perm[e.dst];
    }
    return Graph(g.size(), edges);
}

/// A + shift * I.
inline Graph add_identity(const Graph &g, double shift = 1.0) {
    std::vector<Edge> edges = g.edges();
    for (NodeId v = 0; v < g.size(); ++v)
        edges.push_back({v, v, shift});
    return Graph(g.size(), edges);
}

/// c * A.
inline Graph scaled(const Graph &g, double c) {
    std::vector<Edge> edges = g.edges();
    for (Edge &e : edges)
        e.weight *= c;
    return Graph(g.size(), edges);
}

} // namespace infect

#endif
