#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyclonum/closed_forms.hpp"
#include "cyclonum/errors.hpp"
#include "cyclonum/field.hpp"
#include "cyclonum/integer.hpp"
#include "cyclonum/oracle.hpp"

namespace cyclonum {

enum class VertexOrdering { Canonical, Natural };

constexpr std::string_view to_string(VertexOrdering o) { return o == VertexOrdering::Canonical ? "canonical" : "natural"; }

/// Cayley digraph on G_q = F_q^x x F_q^x with connection set
/// {(x, 1-x) : x in F_q \ {0,1}}; edges (u,v) -> (ux, v(1-x)).
///
/// Canonical ordering: nu(u,v) = (q-1) log_g(u) + log_g(v).
/// Natural ordering (prime q): elements named 1..q-1, nu(s,t) = (q-1)(s-1) + t-1.
/// Indices are 0-based.
class CayleyGraph {
 public:
  using Code = Subfield::value_type;

  static CayleyGraph build(const ExtensionContext& ctx, VertexOrdering ordering) {
    const auto& f = ctx.subfield();
    const auto q = ctx.q();
    if (ordering == VertexOrdering::Natural && ctx.n() != 1)
      fail(ErrorKind::NaturalOrderingUnavailable, "natural ordering needs prime q");

    CayleyGraph g;
    g.q_ = q;
    g.ordering_ = ordering;
    g.position_.assign(q, 0);
    g.element_.assign(q - 1, 0);
    for (Code c = 1; c < q; ++c) {
      // position_[code] is the 0-based rank of the element in the chosen naming.
      std::uint64_t pos = c - 1;
      if (ordering == VertexOrdering::Natural) pos = ctx.unpack(f.lift(c)).coeffs[0] - 1;
      g.position_[c] = pos;
      g.element_[pos] = c;
    }
    for (Code x = 0; x < q; ++x)
      if (x != f.zero() && x != f.one()) g.connection_.emplace_back(x, f.sub(f.one(), x));

    const auto vertices = (q - 1) * (q - 1);
    g.successors_.resize(vertices);
    for (std::size_t i = 0; i < vertices; ++i) {
      const auto [u, v] = g.vertex(i);
      for (const auto& [x, y] : g.connection_) g.successors_[i].push_back(g.index(f.mul(u, x), f.mul(v, y)));
    }
    return g;
  }

  std::uint64_t q() const { return q_; }
  VertexOrdering ordering() const { return ordering_; }
  std::size_t vertex_count() const { return successors_.size(); }
  const std::vector<std::pair<Code, Code>>& connection_set() const { return connection_; }

  std::size_t index(Code u, Code v) const {
    if (u == 0 || v == 0) fail(ErrorKind::ZeroArgument, "vertices have nonzero coordinates");
    return static_cast<std::size_t>(position_[u] * (q_ - 1) + position_[v]);
  }
  std::pair<Code, Code> vertex(std::size_t i) const { return {element_[i / (q_ - 1)], element_[i % (q_ - 1)]}; }
  const std::vector<std::size_t>& successors(std::size_t i) const { return successors_[i]; }

  std::vector<std::vector<std::uint8_t>> adjacency() const {
    std::vector<std::vector<std::uint8_t>> a(vertex_count(), std::vector<std::uint8_t>(vertex_count(), 0));
    for (std::size_t i = 0; i < vertex_count(); ++i)
      for (auto j : successors_[i]) a[i][j] = 1;
    return a;
  }

  /// Plain text: a header line, then one row per line of space-separated 0/1.
  std::string adjacency_text() const {
    std::string out = "# cayley-digraph q=" + std::to_string(q_) + " ordering=" + std::string(to_string(ordering_)) +
                      " vertices=" + std::to_string(vertex_count()) + "\n";
    for (const auto& row : adjacency()) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) out += ' ';
        out += row[j] ? '1' : '0';
      }
      out += '\n';
    }
    return out;
  }

 private:
  std::uint64_t q_ = 0;
  VertexOrdering ordering_ = VertexOrdering::Canonical;
  std::vector<std::uint64_t> position_;
  std::vector<Code> element_;
  std::vector<std::pair<Code, Code>> connection_;
  std::vector<std::vector<std::size_t>> successors_;
};

/// Dense square matrix of exact nonnegative integers.
class WalkMatrix {
 public:
  explicit WalkMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static WalkMatrix adjacency(const CayleyGraph& g) {
    WalkMatrix m(g.vertex_count());
    for (std::size_t i = 0; i < m.dim_; ++i)
      for (auto j : g.successors(i)) m(i, j) += 1;
    return m;
  }

  static WalkMatrix identity(std::size_t dim) {
    WalkMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }

  /// A^r by square-and-multiply.
  static WalkMatrix power(const CayleyGraph& g, unsigned r) {
    WalkMatrix result = identity(g.vertex_count());
    WalkMatrix base = adjacency(g);
    for (; r > 0; r >>= 1) {
      if (r & 1) result = result * base;
      if (r > 1) base = base * base;
    }
    return result;
  }

  std::size_t dim() const { return dim_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  friend WalkMatrix operator*(const WalkMatrix& x, const WalkMatrix& y) {
    WalkMatrix out(x.dim_);
    for (std::size_t i = 0; i < x.dim_; ++i)
      for (std::size_t l = 0; l < x.dim_; ++l) {
        const auto& xil = x(i, l);
        if (xil == 0) continue;
        for (std::size_t j = 0; j < x.dim_; ++j) out(i, j) += xil * y(l, j);
      }
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<BigInt> data_;
};

/// Row `source` of A^r, by r vector-matrix products.
inline std::vector<BigInt> walk_vector(const CayleyGraph& g, unsigned r, std::size_t source) {
  std::vector<BigInt> cur(g.vertex_count()), next(g.vertex_count());
  cur[source] = 1;
  for (unsigned step = 0; step < r; ++step) {
    std::fill(next.begin(), next.end(), BigInt(0));
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i] == 0) continue;
      for (auto j : g.successors(i)) next[j] += cur[i];
    }
    cur.swap(next);
  }
  return cur;
}

inline BigInt walk_count(const CayleyGraph& g, unsigned r, std::size_t source, std::size_t target) {
  if (r < 1) fail(ErrorKind::InvalidArgument, "walk length must be positive");
  return walk_vector(g, r, source)[target];
}

/// W_{u,v}(q,r): r-tuples over F_q \ {0,1} with prod x_t = u and prod (1-x_t) = v.
inline BigInt W(const ExtensionContext& ctx, const CayleyGraph& g, Subfield::value_type u, Subfield::value_type v,
                unsigned r) {
  const auto one = ctx.subfield().one();
  return walk_count(g, r, g.index(one, one), g.index(u, v));
}

/// (q^r + (-1)^r (q-2)^r - 2) / (q-1)^2, which is always an integer.
inline BigInt digraph_leading_term(std::uint64_t q, unsigned r) {
  const BigInt num = big_pow(q, r) + (r % 2 == 0 ? 1 : -1) * big_pow(q - 2, r) - 2;
  const BigInt den = BigInt(q - 1) * (q - 1);
  if (num % den != 0) fail(ErrorKind::NonIntegerLeadingTerm, "leading term is not integral");
  return num / den;
}

/// The vertex ((-1)^r omega^{ak}, omega^{bk}) with -1 taken in the field.
inline std::pair<Subfield::value_type, Subfield::value_type> digraph_target(const ExtensionContext& ctx,
                                                                           CycloParams params) {
  const auto& f = ctx.subfield();
  auto u = f.from_exponent(static_cast<std::int64_t>(params.a));
  if (ctx.r() % 2 == 1) u = f.neg(u);
  return {u, f.from_exponent(static_cast<std::int64_t>(params.b))};
}

/// Evaluates the walk formula from a precomputed row of A^r starting at (1,1).
inline std::uint64_t cyclotomic_from_walks(const ExtensionContext& ctx, const CayleyGraph& g,
                                           const std::vector<BigInt>& walks_from_identity, CycloParams params) {
  validate(ctx, params);
  if (ctx.q() == 2) return static_cast<std::uint64_t>(q2_value(ctx.r()));
  const auto [u, v] = digraph_target(ctx, params);
  const BigInt w = walks_from_identity[g.index(u, v)];
  const BigInt value = digraph_leading_term(ctx.q(), ctx.r()) + (ctx.r() % 2 == 1 ? w : BigInt(-w));
  if (value < 0) fail(ErrorKind::TheoremViolation, "negative cyclotomic number from walk formula");
  return static_cast<std::uint64_t>(value);
}

/// (a,b)_{q-1} = leading + (-1)^{r-1} W_{(-1)^r omega^{ak}, omega^{bk}}(q,r).
/// q = 2 has a one-vertex graph with no edges and is delegated to the closed form.
inline std::uint64_t cyclotomic_by_digraph(const ExtensionContext& ctx, const CayleyGraph& g, CycloParams params) {
  validate(ctx, params);
  if (ctx.q() == 2) return static_cast<std::uint64_t>(q2_value(ctx.r()));
  const auto one = ctx.subfield().one();
  return cyclotomic_from_walks(ctx, g, walk_vector(g, ctx.r(), g.index(one, one)), params);
}

struct HalfKCriterion {
  int clause = 0;           // 1: r odd, 2: r even and q odd, 3: r even and q even
  BigInt walks;             // the relevant entry of A^r
  BigInt scaled_walks;      // 2 (q-1)^2 * walks
  BigInt threshold;         // numerator of the right-hand side
  bool criterion = false;   // inequality on the walk count
  bool direct = false;      // value <= ceil(k/2)
  bool agrees() const { return criterion == direct; }
};

/// Restates (a,b)_{q-1} <= ceil(k/2) as an inequality on one entry of A^r and
/// evaluates both sides exactly. `reference` is the cyclotomic value used for
/// the direct comparison (defaults to the walk formula).
inline HalfKCriterion check_halfk_criteria(const ExtensionContext& ctx, const CayleyGraph& g, CycloParams params,
                                           std::optional<std::uint64_t> reference = std::nullopt) {
  validate(ctx, params);
  const auto q = ctx.q();
  const auto r = ctx.r();
  if (q < 3) fail(ErrorKind::MethodInapplicable, "criteria need q >= 3");
  HalfKCriterion out;
  const auto [u, v] = digraph_target(ctx, params);
  const auto one = ctx.subfield().one();
  out.walks = walk_count(g, r, g.index(one, one), g.index(u, v));
  const BigInt qq(q);
  const BigInt qr = big_pow(q, r);
  const BigInt q2r = big_pow(q - 2, r);
  out.scaled_walks = 2 * (qq - 1) * (qq - 1) * out.walks;
  if (r % 2 == 1) {
    out.clause = 1;
    out.threshold = (qq - 3) * qr + 2 * q2r + qq * qq - 3 * qq + 6;
    out.criterion = out.scaled_walks <= out.threshold;
  } else if (q % 2 == 1) {
    out.clause = 2;
    out.threshold = -(qq - 3) * qr + 2 * q2r + qq - 5;
    out.criterion = out.scaled_walks >= out.threshold;
  } else {
    out.clause = 3;
    out.threshold = -(qq - 3) * qr + 2 * q2r - qq * qq + 3 * qq - 6;
    out.criterion = out.scaled_walks >= out.threshold;
  }
  const auto value = reference ? *reference : cyclotomic_by_digraph(ctx, g, params);
  out.direct = BigInt(value) <= half_k(q, r).value;
  return out;
}

}  // namespace cyclonum
