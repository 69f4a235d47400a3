#include "cmforge/chevalley.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "cmforge/rational.hpp"

namespace cmforge {

namespace {

using Coord = std::vector<int>;

Coord to_coord(const Eigen::VectorXi& v) { return Coord(v.data(), v.data() + v.size()); }

struct IntEntry {
  int i, j, k;
  std::int64_t value;
};

/// Root system scaffolding: roots, the invariant form, string lengths, and
/// the Chevalley constants N(a,b) determined by the extraspecial pairs.
class RootTable {
 public:
  explicit RootTable(const Eigen::MatrixXi& cartan) : cartan_(cartan), r_(static_cast<int>(cartan.rows())) {
    validate_cartan();
    build_symmetrizer();
    generate_roots();
    build_constants();
  }

  int rank() const { return r_; }
  int count() const { return static_cast<int>(pos_.size()); }
  const std::vector<Eigen::VectorXi>& positive() const { return pos_; }

  /// Signed index: m+1 for positive root m, -(m+1) for its negative, 0 if absent.
  int find(const Eigen::VectorXi& coords) const {
    auto it = index_.find(to_coord(coords));
    if (it != index_.end()) return it->second + 1;
    it = index_.find(to_coord(Eigen::VectorXi(-coords)));
    if (it != index_.end()) return -(it->second + 1);
    return 0;
  }

  Eigen::VectorXi coords(int signed_idx) const {
    const Eigen::VectorXi& v = pos_[std::abs(signed_idx) - 1];
    return signed_idx > 0 ? v : Eigen::VectorXi(-v);
  }

  /// (a, b) under the Weyl-invariant form (integer-scaled symmetrizer).
  std::int64_t form(const Eigen::VectorXi& a, const Eigen::VectorXi& b) const {
    std::int64_t s = 0;
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < r_; ++j) s += static_cast<std::int64_t>(a[i]) * sym_(i, j) * b[j];
    return s;
  }

  /// <b, a_k^vee> = 2(b, a_k)/(a_k, a_k).
  int cartan_pairing(const Eigen::VectorXi& b, int k) const {
    int s = 0;
    for (int m = 0; m < r_; ++m) s += b[m] * cartan_(m, k);
    return s;
  }

  /// Coroot of a positive root in the basis of simple coroots; integral.
  Eigen::VectorXi coroot(int m) const {
    const Eigen::VectorXi& b = pos_[m];
    const std::int64_t bb = form(b, b);
    Eigen::VectorXi c(r_);
    for (int k = 0; k < r_; ++k) {
      const std::int64_t num = static_cast<std::int64_t>(b[k]) * sym_(k, k);
      if (num % bb != 0) throw std::runtime_error("chevalley: non-integral coroot");
      c[k] = static_cast<int>(num / bb);
    }
    return c;
  }

  /// N(a, b) for signed root indices; zero when a+b is not a root.
  std::int64_t constant(int a, int b) const {
    if (a > 0 && b > 0) return npp_(a - 1, b - 1);
    if (a < 0 && b < 0) return -constant(-a, -b);
    if (a < 0) return -constant(b, a);
    // a > 0, b < 0, a != -b
    const int c = -b;
    Eigen::VectorXi w = coords(a) - coords(c);
    const int widx = find(w);
    if (widx == 0) return 0;
    if (widx > 0) {
      // a = c + w: N(a,-c) = -(w,w)/(a,a) N(c,w)
      const Rational val = Rational(form(w, w), form(coords(a), coords(a))) *
                           Rational(constant(c, widx));
      return -as_int(val);
    }
    // c = a + w': N(a,-c) = -(w',w')/(c,c) N(a,w')
    const Eigen::VectorXi wp = -w;
    const Rational val = Rational(form(wp, wp), form(coords(c), coords(c))) *
                         Rational(constant(a, -widx));
    return -as_int(val);
  }

 private:
  static std::int64_t as_int(const Rational& q) {
    if (q.den() != 1) throw std::runtime_error("chevalley: internal sign-consistency failure");
    return q.num();
  }

  void validate_cartan() {
    if (cartan_.rows() != cartan_.cols() || r_ < 1)
      throw std::invalid_argument("chevalley: Cartan matrix must be square and nonempty");
    for (int i = 0; i < r_; ++i) {
      if (cartan_(i, i) != 2) throw std::invalid_argument("chevalley: diagonal must be 2");
      for (int j = 0; j < r_; ++j) {
        if (i == j) continue;
        if (cartan_(i, j) > 0) throw std::invalid_argument("chevalley: off-diagonal must be <= 0");
        if ((cartan_(i, j) == 0) != (cartan_(j, i) == 0))
          throw std::invalid_argument("chevalley: zero pattern must be symmetric");
      }
    }
  }

  void build_symmetrizer() {
    // d_i with d_i C(j,i)?  We need S(i,j) = d_j C(i,j) symmetric; propagate
    // ratios over the Dynkin graph, then scale to integers.
    std::vector<Rational> d(r_, Rational(0));
    std::vector<int> stack;
    for (int seed = 0; seed < r_; ++seed) {
      if (d[seed] != Rational(0)) continue;
      d[seed] = Rational(1);
      stack.push_back(seed);
      while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < r_; ++j) {
          if (j == i || cartan_(i, j) == 0) continue;
          const Rational dj = d[i] * Rational(cartan_(j, i), cartan_(i, j));
          if (d[j] == Rational(0)) {
            d[j] = dj;
            stack.push_back(j);
          } else if (d[j] != dj) {
            throw std::invalid_argument("chevalley: Cartan matrix is not symmetrizable");
          }
        }
      }
    }

    std::int64_t lcm_den = 1;
    for (const auto& di : d) lcm_den = std::lcm(lcm_den, di.den());
    sym_.resize(r_, r_);
    for (int i = 0; i < r_; ++i) {
      const Rational dj = d[i] * Rational(lcm_den);
      for (int j = 0; j < r_; ++j)
        sym_(j, i) = static_cast<std::int64_t>(cartan_(j, i)) * dj.num();
    }
    if (sym_ != sym_.transpose().eval())
      throw std::invalid_argument("chevalley: Cartan matrix is not symmetrizable");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym_.cast<double>());
    if (es.eigenvalues().minCoeff() <= 1e-9)
      throw std::invalid_argument("chevalley: Cartan matrix is not of finite type");
  }

  void generate_roots() {
    std::map<Coord, int> seen;
    std::vector<Eigen::VectorXi> current;
    for (int i = 0; i < r_; ++i) {
      Eigen::VectorXi a = Eigen::VectorXi::Zero(r_);
      a[i] = 1;
      current.push_back(a);
      seen.emplace(to_coord(a), 0);
    }
    std::vector<Eigen::VectorXi> all = current;
    while (!current.empty()) {
      std::vector<Eigen::VectorXi> next;
      for (const auto& b : current) {
        for (int i = 0; i < r_; ++i) {
          Eigen::VectorXi step = Eigen::VectorXi::Zero(r_);
          step[i] = 1;
          int q = 0;
          Eigen::VectorXi down = b - step;
          while (!(down.array() < 0).any() && seen.count(to_coord(down))) {
            ++q;
            down -= step;
          }
          if (q - cartan_pairing(b, i) > 0) {
            Eigen::VectorXi up = b + step;
            if (seen.emplace(to_coord(up), 0).second) {
              next.push_back(up);
              all.push_back(up);
              if (all.size() > 1000) throw std::invalid_argument("chevalley: root system too large");
            }
          }
        }
      }
      current = std::move(next);
    }
    std::sort(all.begin(), all.end(), [](const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
      const int ha = a.sum(), hb = b.sum();
      if (ha != hb) return ha < hb;
      return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                          b.data() + b.size());
    });
    pos_ = std::move(all);
    for (int m = 0; m < count(); ++m) index_.emplace(to_coord(pos_[m]), m);
  }

  /// Largest p with b - p*a still a root.
  int string_down(const Eigen::VectorXi& a, const Eigen::VectorXi& b) const {
    int p = 0;
    Eigen::VectorXi v = b - a;
    while (find(v) != 0) {
      ++p;
      v -= a;
    }
    return p;
  }

  void build_constants() {
    const int n = count();
    npp_ = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (int t = 0; t < n; ++t) {
      if (pos_[t].sum() < 2) continue;
      // Special pairs (r, s), r < s, r + s = t; the one with minimal r is
      // extraspecial and gets the positive sign.
      std::vector<std::pair<int, int>> special;
      for (int a = 0; a < t; ++a) {
        const int sidx = find(Eigen::VectorXi(pos_[t] - pos_[a]));
        if (sidx > a + 1) special.emplace_back(a, sidx - 1);
      }
      std::sort(special.begin(), special.end());
      if (special.empty()) throw std::runtime_error("chevalley: composite root without a pair");

      const auto [u, v] = special.front();
      const std::int64_t nuv = string_down(pos_[u], pos_[v]) + 1;
      npp_(u, v) = nuv;
      npp_(v, u) = -nuv;

      for (std::size_t s = 1; s < special.size(); ++s) {
        const auto [a, b] = special[s];
        // Four-root relation on (u, v, -a, -b), which all sum to zero:
        //   N(u,v)N(-a,-b)/(t,t) + N(v,-a)N(u,-b)/(v-a,v-a)
        //     + N(-a,u)N(v,-b)/(u-a,u-a) = 0.
        Rational acc(0);
        const Eigen::VectorXi va = pos_[v] - pos_[a];
        if (find(va) != 0)
          acc += Rational(constant(v + 1, -(a + 1)) * constant(u + 1, -(b + 1)), form(va, va));
        const Eigen::VectorXi ua = pos_[u] - pos_[a];
        if (find(ua) != 0)
          acc += Rational(constant(-(a + 1), u + 1) * constant(v + 1, -(b + 1)), form(ua, ua));
        const Rational nab = Rational(form(pos_[t], pos_[t])) * acc / Rational(nuv);
        const std::int64_t val = as_int(nab);
        if (std::abs(val) != string_down(pos_[a], pos_[b]) + 1)
          throw std::runtime_error("chevalley: internal sign-consistency failure");
        npp_(a, b) = val;
        npp_(b, a) = -val;
      }
    }
  }

  Eigen::MatrixXi cartan_;
  int r_;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> sym_;
  std::vector<Eigen::VectorXi> pos_;
  std::map<Coord, int> index_;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> npp_;
};

/// Exact integer Jacobi check over the full triple range.
void check_jacobi_exact(int dim, const std::vector<IntEntry>& entries) {
  std::vector<std::vector<std::pair<int, std::int64_t>>> col(
      static_cast<std::size_t>(dim) * dim);
  for (const auto& e : entries) col[static_cast<std::size_t>(e.i) * dim + e.j].emplace_back(e.k, e.value);

  std::vector<std::int64_t> acc(dim, 0);
  std::vector<int> touched;
  auto add = [&](int i, int j, int t) {
    for (const auto& [m, vm] : col[static_cast<std::size_t>(i) * dim + j]) {
      for (const auto& [k, c] : col[static_cast<std::size_t>(m) * dim + t]) {
        if (acc[k] == 0) touched.push_back(k);
        acc[k] += vm * c;
      }
    }
  };
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      for (int k = j + 1; k < dim; ++k) {
        add(i, j, k);
        add(j, k, i);
        add(k, i, j);
        for (int t : touched) {
          if (acc[t] != 0) throw std::runtime_error("chevalley: internal sign-consistency failure");
          acc[t] = 0;
        }
        touched.clear();
      }
    }
  }
}

}  // namespace

ChevalleyData chevalley_compact_data(const Eigen::MatrixXi& cartan) {
  const RootTable table(cartan);
  const int r = table.rank();
  const int n = table.count();
  const int dim = r + 2 * n;

  const auto xi = [&](int m) { return r + 2 * m; };
  const auto yi = [&](int m) { return r + 2 * m + 1; };

  std::vector<IntEntry> raw;
  auto put = [&](int i, int j, int k, std::int64_t v) {
    if (v == 0) return;
    raw.push_back({i, j, k, v});
    raw.push_back({j, i, k, -v});
  };

  // [ih_k, x_b] = <b, a_k^vee> y_b,  [ih_k, y_b] = -<b, a_k^vee> x_b.
  for (int k = 0; k < r; ++k) {
    for (int m = 0; m < n; ++m) {
      const int pairing = table.cartan_pairing(table.positive()[m], k);
      put(k, xi(m), yi(m), pairing);
      put(k, yi(m), xi(m), -pairing);
    }
  }

  // [x_b, y_b] = 2 i h_b (coroot expansion).
  for (int m = 0; m < n; ++m) {
    const Eigen::VectorXi cr = table.coroot(m);
    for (int k = 0; k < r; ++k) put(xi(m), yi(m), k, 2 * static_cast<std::int64_t>(cr[k]));
  }

  // Root-root products via N(b,g) and N(b,-g), with x_{-d} = -x_d, y_{-d} = y_d.
  auto x_signed = [&](int signed_idx) { return std::pair<int, int>{xi(std::abs(signed_idx) - 1), signed_idx > 0 ? 1 : -1}; };
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int sum = table.find(Eigen::VectorXi(table.positive()[a] + table.positive()[b]));
      const int dif = table.find(Eigen::VectorXi(table.positive()[a] - table.positive()[b]));
      const std::int64_t nsum = sum ? table.constant(a + 1, b + 1) : 0;
      const std::int64_t ndif = dif ? table.constant(a + 1, -(b + 1)) : 0;
      if (sum) {
        const auto [ix, sgn] = x_signed(sum);
        put(xi(a), xi(b), ix, sgn * nsum);    // [x_a, x_b] += N(a,b) x_{a+b}
        put(yi(a), yi(b), ix, -sgn * nsum);   // [y_a, y_b] -= N(a,b) x_{a+b}
        put(xi(a), yi(b), ix + 1, nsum);      // [x_a, y_b] += N(a,b) y_{a+b}
        put(yi(a), xi(b), ix + 1, nsum);      // [y_a, x_b] += N(a,b) y_{a+b}
      }
      if (dif) {
        const auto [ix, sgn] = x_signed(dif);
        put(xi(a), xi(b), ix, -sgn * ndif);   // [x_a, x_b] -= N(a,-b) x_{a-b}
        put(yi(a), yi(b), ix, -sgn * ndif);   // [y_a, y_b] -= N(a,-b) x_{a-b}
        put(xi(a), yi(b), ix + 1, ndif);      // [x_a, y_b] += N(a,-b) y_{a-b}
        put(yi(a), xi(b), ix + 1, -ndif);     // [y_a, x_b] -= N(a,-b) y_{a-b}
      }
    }
  }

  // Merge duplicate (i,j,k) contributions before the exact check.
  std::sort(raw.begin(), raw.end(), [](const IntEntry& l, const IntEntry& r2) {
    return std::tie(l.i, l.j, l.k) < std::tie(r2.i, r2.j, r2.k);
  });
  std::vector<IntEntry> merged;
  for (const auto& e : raw) {
    if (!merged.empty() && merged.back().i == e.i && merged.back().j == e.j &&
        merged.back().k == e.k) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const IntEntry& e) { return e.value == 0; });

  check_jacobi_exact(dim, merged);

  std::vector<TensorEntry> entries;
  entries.reserve(merged.size());
  for (const auto& e : merged)
    entries.push_back({e.i, e.j, e.k, static_cast<double>(e.value)});

  std::vector<std::string> labels;
  for (int k = 0; k < r; ++k) labels.push_back("ih[" + std::to_string(k + 1) + "]");
  for (int m = 0; m < n; ++m) {
    std::string c;
    for (int k = 0; k < r; ++k) c += (k ? "," : "") + std::to_string(table.positive()[m][k]);
    labels.push_back("x[" + c + "]");
    labels.push_back("y[" + c + "]");
  }

  return ChevalleyData{StructureAlgebra(dim, std::move(entries), std::move(labels)), cartan,
                       table.positive()};
}

StructureAlgebra chevalley_compact(const Eigen::MatrixXi& cartan) {
  return chevalley_compact_data(cartan).algebra;
}

std::vector<Eigen::VectorXi> positive_roots(const Eigen::MatrixXi& cartan) {
  return chevalley_compact_data(cartan).positive_roots;
}

Eigen::MatrixXi cartan_matrix(char series, int rank) {
  auto chain = [](int r) {
    Eigen::MatrixXi c = 2 * Eigen::MatrixXi::Identity(r, r);
    for (int i = 0; i + 1 < r; ++i) c(i, i + 1) = c(i + 1, i) = -1;
    return c;
  };
  switch (series) {
    case 'A':
      if (rank < 1) throw std::invalid_argument("cartan_matrix: A needs rank >= 1");
      return chain(rank);
    case 'D': {
      if (rank < 3) throw std::invalid_argument("cartan_matrix: D needs rank >= 3");
      // Chain 1..rank-2 with both terminal nodes attached to rank-2.
      Eigen::MatrixXi c = chain(rank);
      c(rank - 2, rank - 1) = c(rank - 1, rank - 2) = 0;
      c(rank - 3, rank - 1) = c(rank - 1, rank - 3) = -1;
      return c;
    }
    case 'E': {
      if (rank < 6 || rank > 8) throw std::invalid_argument("cartan_matrix: E needs rank 6..8");
      // Bourbaki: chain 1-3-4-5-...-rank, with node 2 attached to node 4.
      Eigen::MatrixXi c = 2 * Eigen::MatrixXi::Identity(rank, rank);
      auto link = [&](int i, int j) { c(i - 1, j - 1) = c(j - 1, i - 1) = -1; };
      link(1, 3);
      link(3, 4);
      link(2, 4);
      for (int i = 4; i < rank; ++i) link(i, i + 1);
      return c;
    }
    default:
      throw std::invalid_argument("cartan_matrix: unknown series");
  }
}

}  // namespace cmforge
