#include "fsplit/fsignature.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "fsplit/errors.hpp"
#include "fsplit/frobenius.hpp"
#include "fsplit/ideal.hpp"
#include "fsplit/linalg.hpp"

namespace fsplit {

namespace {

using Vec = std::array<std::int64_t, kMaxVariables>;

std::int64_t checked(std::int64_t a, std::int64_t b, bool add) {
  std::int64_t out = 0;
  const bool overflow = add ? __builtin_add_overflow(a, b, &out) : __builtin_mul_overflow(a, b, &out);
  if (overflow) throw std::overflow_error("lattice arithmetic overflow");
  return out;
}

// r := s*a + t*b, entrywise with overflow checks.
Vec combine(std::int64_t s, const Vec& a, std::int64_t t, const Vec& b, std::size_t n) {
  Vec out{};
  for (std::size_t i = 0; i < n; ++i) out[i] = checked(checked(s, a[i], false), checked(t, b[i], false), true);
  return out;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Integer lattice kept in row echelon form with positive pivots, each pivot
// the gcd of its column over the sublattice vanishing on earlier columns.
// Reducing a vector against it gives a canonical coset representative.
class Lattice {
 public:
  explicit Lattice(std::size_t n) : n_(n) {}

  void insert(Vec v) {
    for (std::size_t col = 0; col < n_; ++col) {
      if (v[col] == 0) continue;
      auto it = std::find_if(rows_.begin(), rows_.end(), [&](const Row& r) { return r.pivot == col; });
      if (it == rows_.end()) {
        if (v[col] < 0) {
          for (std::size_t i = 0; i < n_; ++i) v[i] = -v[i];
        }
        rows_.push_back({col, v});
        std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) { return a.pivot < b.pivot; });
        normalize();
        return;
      }
      // Extended gcd on the pivot entries.
      const std::int64_t a = it->v[col];
      const std::int64_t b = v[col];
      std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        const std::int64_t qt = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - qt * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - qt * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - qt * t);
      }
      if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
      }
      const Vec pivot_row = combine(old_s, it->v, old_t, v, n_);
      v = combine(a / old_r, v, -(b / old_r), it->v, n_);
      it->v = pivot_row;
    }
    normalize();
  }

  Vec reduce(Vec v) const {
    for (const auto& row : rows_) {
      const std::int64_t k = floor_div(v[row.pivot], row.v[row.pivot]);
      if (k != 0) v = combine(1, v, -k, row.v, n_);
    }
    return v;
  }

 private:
  struct Row {
    std::size_t pivot;
    Vec v;
  };

  // Hermite-style cleanup: entries of each row at later pivot columns are
  // brought into [0, pivot) so coordinates stay small.
  void normalize() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (std::size_t j = i + 1; j < rows_.size(); ++j) {
        const auto c = rows_[j].pivot;
        const std::int64_t k = floor_div(rows_[i].v[c], rows_[j].v[c]);
        if (k != 0) rows_[i].v = combine(1, rows_[i].v, -k, rows_[j].v, n_);
      }
    }
  }

  std::size_t n_;
  std::vector<Row> rows_;
};

struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
    return h;
  }
};

void validate_hypersurface(const Polynomial& f) {
  if (f.is_zero()) throw DomainError("hypersurface needs a nonzero polynomial");
  if (f.constant_term() != 0) throw DomainError("hypersurface must pass through the origin (f(0) = 0)");
  if (f.context()->num_variables() < 1) throw DomainError("hypersurface needs at least one variable");
  if (!is_squarefree(f)) throw DomainError("hypersurface polynomial must be squarefree (reduced quotient)");
}

// f^{q-1} = prod_{i<e} (f^{p-1})^{p^i}, truncated to the box [0, q)^n.
Polynomial splitting_power(const Polynomial& f, unsigned e) {
  const auto q = prime_power(f.prime(), e);
  const Polynomial base = f.pow(f.prime() - 1).truncated_below(q);
  Polynomial g = base;
  for (unsigned i = 1; i < e; ++i) g = (g * frobenius_expand(base, i).truncated_below(q)).truncated_below(q);
  return g;
}

// Entries of the dense pieces above this count fall back to the colon route.
constexpr std::size_t kMaxPieceEntries = std::size_t{1} << 26;

}  // namespace

bool is_squarefree(const Polynomial& f) {
  const auto& ctx = f.context();
  if (f.is_zero()) return false;
  if (f.is_constant()) return true;
  Polynomial common = f.monic();
  bool any_derivative = false;
  for (std::size_t i = 0; i < ctx->num_variables() && !common.is_constant(); ++i) {
    const Polynomial d = f.derivative(i);
    if (d.is_zero()) continue;
    any_derivative = true;
    // gcd(a, b) = a b / lcm(a, b), with (lcm) = (a) ∩ (b).
    const Ideal meet = ideal_intersect(Ideal(ctx, {common}), Ideal(ctx, {d}));
    const auto& lcm_basis = meet.basis();
    auto g = divide_exact(common * d, lcm_basis.front());
    if (!g) throw Error("internal: lcm does not divide the product");
    common = g->monic();
  }
  return any_derivative && common.is_constant();
}

std::uint64_t splitting_number_hypersurface(const Polynomial& f, unsigned e) {
  validate_hypersurface(f);
  if (e == 0) throw DomainError("splitting numbers need e >= 1");
  const auto& ctx = f.context();
  const auto n = ctx->num_variables();
  const auto p = ctx->prime();
  const auto q = prime_power(p, e);

  const Polynomial g = splitting_power(f, e);
  if (g.is_zero()) return 0;

  // Grading group Z^n / L, with L spanned by differences of the exponents of g.
  Lattice lattice(n);
  const auto& first = g.terms().front().monomial;
  for (const auto& t : g.terms()) {
    Vec d{};
    for (std::size_t i = 0; i < n; ++i) d[i] = static_cast<std::int64_t>(t.monomial[i]) - first[i];
    lattice.insert(d);
  }

  // Support of g sorted lexicographically for pruned enumeration of mu * g.
  std::vector<Term> support = g.terms();
  std::sort(support.begin(), support.end(), [](const Term& a, const Term& b) { return a.monomial < b.monomial; });
  std::uint64_t min_degree = UINT64_MAX;
  std::vector<std::uint32_t> min_exp(n, UINT32_MAX);
  for (const auto& t : support) {
    min_degree = std::min(min_degree, t.monomial.degree());
    for (std::size_t i = 0; i < n; ++i) min_exp[i] = std::min(min_exp[i], t.monomial[i]);
  }
  const std::uint64_t top = q - 1;
  const std::uint64_t max_mu_degree = n * top - min_degree;

  // Rows mu grouped by grading class.
  std::unordered_map<Vec, std::vector<Monomial>, VecHash> groups;
  {
    std::vector<std::uint32_t> mu(n, 0);
    std::vector<std::uint32_t> bound(n);
    for (std::size_t i = 0; i < n; ++i) bound[i] = static_cast<std::uint32_t>(top - min_exp[i]);
    std::uint64_t degree = 0;
    while (true) {
      if (degree <= max_mu_degree) {
        Vec key{};
        for (std::size_t i = 0; i < n; ++i) key[i] = mu[i];
        groups[lattice.reduce(key)].push_back(Monomial(std::span<const std::uint32_t>(mu.data(), n)));
      }
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (mu[i] < bound[i] && degree < max_mu_degree) {
          ++mu[i];
          ++degree;
          break;
        }
        degree -= mu[i];
        mu[i] = 0;
      }
      if (i == n) break;
    }
  }

  std::uint64_t total = 0;
  const auto& kernels = simd::active_kernels();
  std::vector<std::pair<Monomial, std::uint32_t>> row_terms;
  for (auto& [key, rows] : groups) {
    // Collect the truncated products mu * g and index their monomials.
    std::unordered_map<Monomial, std::size_t, MonomialHash> columns;
    std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> sparse_rows;
    for (const auto& mu : rows) {
      std::vector<std::pair<std::size_t, std::uint32_t>> row;
      for (const auto& t : support) {
        if (t.monomial[0] + mu[0] > top) break;  // sorted by first exponent
        bool inside = true;
        for (std::size_t i = 1; i < n && inside; ++i) inside = t.monomial[i] + mu[i] <= top;
        if (!inside) continue;
        const Monomial target = t.monomial * mu;
        auto [it, fresh] = columns.try_emplace(target, columns.size());
        row.emplace_back(it->second, t.coeff);
      }
      if (!row.empty()) sparse_rows.push_back(std::move(row));
    }
    if (sparse_rows.empty()) continue;
    if (sparse_rows.size() * columns.size() > kMaxPieceEntries) return splitting_number_by_colon(f, e);
    DenseMatrixModP m(sparse_rows.size(), columns.size(), p);
    for (std::size_t r = 0; r < sparse_rows.size(); ++r) {
      for (const auto& [c, v] : sparse_rows[r]) m.at(r, c) = v;
    }
    total += rank_mod_p(m, kernels);
  }
  return total;
}

std::uint64_t splitting_number_by_colon(const Polynomial& f, unsigned e) {
  validate_hypersurface(f);
  if (e == 0) throw DomainError("splitting numbers need e >= 1");
  const auto& ctx = f.context();
  const Ideal box = frobenius_power(Ideal::maximal(ctx), e);
  const Polynomial g = f.pow(prime_power(ctx->prime(), e) - 1);
  const Colength len = colength(ideal_colon(box, g));
  if (!len.is_finite()) throw DomainError("colon ideal is not zero-dimensional");
  return *len.value;
}

FSignatureReport fsignature_estimate(const Polynomial& f, unsigned e_max) {
  if (e_max < 1 || e_max > 4) throw DomainError("fsignature estimate needs 1 <= e_max <= 4");
  const auto& ctx = f.context();
  const auto p = ctx->prime();
  if (ctx->num_variables() < 1) throw DomainError("hypersurface needs at least one variable");
  const unsigned d = static_cast<unsigned>(ctx->num_variables() - 1);
  FSignatureReport report{p, d, {}, Rational(0), d};
  for (unsigned e = 1; e <= e_max; ++e) {
    const auto a_e = splitting_number_hypersurface(f, e);
    std::uint64_t denom = 1;
    for (unsigned i = 0; i < e * d; ++i) denom *= p;
    report.samples.push_back({e, a_e, Rational(a_e, denom)});
  }
  report.estimate = report.samples.back().ratio;
  return report;
}

}  // namespace fsplit
