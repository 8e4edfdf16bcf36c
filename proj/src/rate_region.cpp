#include "twoway/rate_region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace twoway::region {

namespace {

bool is_power_of_two(int v) { return v >= 1 && (v & (v - 1)) == 0; }

int log2_exact(int v) {
  int m = 0;
  while ((1 << m) < v) ++m;
  return m;
}

// Solves the square system M x = rhs exactly. Returns nullopt when singular.
std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> M,
                                             std::vector<Rat> rhs) {
  const std::size_t n = M.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && M[piv][col].sign() == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    Rat inv = Rat(1) / M[col][col];
    for (std::size_t j = col; j < n; ++j) M[col][j] *= inv;
    rhs[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || M[r][col].sign() == 0) continue;
      Rat f = M[r][col];
      for (std::size_t j = col; j < n; ++j) M[r][j] -= f * M[col][j];
      rhs[r] -= f * rhs[col];
    }
  }
  return rhs;
}

// Next k-combination of indices in [0, n). Returns false when exhausted.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i-- > 0) {
    if (c[i] + (k - i) < n) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

RateRegion::RateRegion(std::vector<std::string> coords,
                       std::vector<Inequality> ineqs, int unit_log2_of)
    : coords_(std::move(coords)), ineqs_(std::move(ineqs)), unit_(unit_log2_of) {
  if (unit_ < 2) throw std::invalid_argument("RateRegion: unit must be >= 2");
  for (const auto& iq : ineqs_) {
    if (iq.a.size() != coords_.size())
      throw std::invalid_argument(
          "RateRegion: coefficient vector length " + std::to_string(iq.a.size()) +
          ", expected " + std::to_string(coords_.size()));
  }
  // Normalize power-of-two units to plain bits.
  if (unit_ != 2 && is_power_of_two(unit_)) {
    Rat m(log2_exact(unit_));
    for (auto& iq : ineqs_) iq.b *= m;
    unit_ = 2;
  }
  // Boundedness certificate.
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    bool covered = false;
    for (const auto& iq : ineqs_) {
      if (iq.a[i].sign() <= 0) continue;
      bool all_nonneg = true;
      for (const auto& c : iq.a) all_nonneg &= (c.sign() >= 0);
      if (all_nonneg) {
        covered = true;
        break;
      }
    }
    if (!covered)
      throw std::invalid_argument("RateRegion: coordinate " + coords_[i] +
                                  " has no finite upper bound");
  }
}

double RateRegion::unit_bits() const {
  return unit_ == 2 ? 1.0 : std::log2(static_cast<double>(unit_));
}

std::string RateRegion::adaptation_mode() const {
  for (const auto& iq : ineqs_)
    if (!iq.full_adaptation) return "partial";
  return "full";
}

int RateRegion::coord_index(const std::string& name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("RateRegion: unknown coordinate " + name);
}

bool RateRegion::contains(const std::vector<Rat>& x) const {
  if (x.size() != coords_.size())
    throw std::invalid_argument("RateRegion: point dimension mismatch");
  for (const auto& v : x)
    if (v.sign() < 0) return false;
  for (const auto& iq : ineqs_) {
    Rat lhs(0);
    for (std::size_t i = 0; i < x.size(); ++i) lhs += iq.a[i] * x[i];
    if (lhs > iq.b) return false;
  }
  return true;
}

bool RateRegion::contains(const RatePoint& p) const {
  std::vector<Rat> x(coords_.size(), Rat(0));
  for (const auto& [name, v] : p.values) {
    x[static_cast<std::size_t>(coord_index(name))] = v;
    if (v.sign() < 0) return false;
  }
  if (p.values.size() != coords_.size())
    throw std::invalid_argument("RateRegion: point coordinate set mismatch");
  return contains(x);
}

bool RateRegion::contains_approx(const std::map<std::string, double>& p,
                                 double tol) const {
  std::vector<double> x(coords_.size(), 0.0);
  for (const auto& [name, v] : p) {
    x[static_cast<std::size_t>(coord_index(name))] = v;
    if (v < -tol) return false;
  }
  for (const auto& iq : ineqs_) {
    double lhs = 0;
    for (std::size_t i = 0; i < x.size(); ++i) lhs += iq.a[i].to_double() * x[i];
    if (lhs > iq.b.to_double() + tol) return false;
  }
  return true;
}

std::vector<std::vector<int>> RateRegion::coordinate_components() const {
  const std::size_t n = coords_.size();
  std::vector<int> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const auto& iq : ineqs_) {
    int first = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (iq.a[i].sign() == 0) continue;
      if (first < 0)
        first = static_cast<int>(i);
      else
        parent[static_cast<std::size_t>(find(static_cast<int>(i)))] = find(first);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < n; ++i)
    groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  for (auto& [root, mem] : groups) out.push_back(std::move(mem));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Rat>> RateRegion::vertices() const {
  if (coords_.size() > 6)
    throw std::invalid_argument("RateRegion::vertices: dimension > 6");

  auto comps = coordinate_components();

  // Vertices per component, each found by exhaustive basis enumeration over
  // that component's constraints (inequalities restricted to it plus the
  // nonnegativity bounds).
  std::vector<std::vector<std::vector<Rat>>> comp_verts;
  for (const auto& comp : comps) {
    const std::size_t d = comp.size();
    // Constraint rows in component-local coordinates: (a, b).
    std::vector<std::pair<std::vector<Rat>, Rat>> cons;
    for (const auto& iq : ineqs_) {
      bool touches = false;
      for (int ci : comp) touches |= (iq.a[static_cast<std::size_t>(ci)].sign() != 0);
      if (!touches) continue;
      std::vector<Rat> row(d, Rat(0));
      for (std::size_t l = 0; l < d; ++l)
        row[l] = iq.a[static_cast<std::size_t>(comp[l])];
      cons.push_back({std::move(row), iq.b});
    }
    for (std::size_t l = 0; l < d; ++l) {
      std::vector<Rat> row(d, Rat(0));
      row[l] = Rat(-1);
      cons.push_back({std::move(row), Rat(0)});
    }

    std::set<std::vector<Rat>> found;
    std::vector<std::size_t> combo(d);
    for (std::size_t i = 0; i < d; ++i) combo[i] = i;
    if (cons.size() >= d) {
      do {
        std::vector<std::vector<Rat>> M(d);
        std::vector<Rat> rhs(d);
        for (std::size_t r = 0; r < d; ++r) {
          M[r] = cons[combo[r]].first;
          rhs[r] = cons[combo[r]].second;
        }
        auto x = solve_square(std::move(M), std::move(rhs));
        if (!x) continue;
        bool feas = true;
        for (const auto& [row, b] : cons) {
          Rat lhs(0);
          for (std::size_t l = 0; l < d; ++l) lhs += row[l] * (*x)[l];
          if (lhs > b) {
            feas = false;
            break;
          }
        }
        if (feas) found.insert(*x);
      } while (next_combination(combo, cons.size()));
    }
    comp_verts.push_back(
        std::vector<std::vector<Rat>>(found.begin(), found.end()));
  }

  // Cartesian product across components, assembled into full coordinates.
  std::vector<std::vector<Rat>> result;
  std::vector<std::size_t> pick(comps.size(), 0);
  while (true) {
    std::vector<Rat> full(coords_.size(), Rat(0));
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const auto& v = comp_verts[c][pick[c]];
      for (std::size_t l = 0; l < comps[c].size(); ++l)
        full[static_cast<std::size_t>(comps[c][l])] = v[l];
    }
    result.push_back(std::move(full));
    std::size_t c = 0;
    for (; c < comps.size(); ++c) {
      if (++pick[c] < comp_verts[c].size()) break;
      pick[c] = 0;
    }
    if (c == comps.size()) break;
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<RatePoint> RateRegion::vertex_points() const {
  std::vector<RatePoint> out;
  for (const auto& v : vertices()) {
    RatePoint p;
    for (std::size_t i = 0; i < coords_.size(); ++i) p.values[coords_[i]] = v[i];
    out.push_back(std::move(p));
  }
  return out;
}

Rat RateRegion::max_weighted_sum(const std::map<std::string, Rat>& weights) const {
  std::vector<Rat> w(coords_.size(), Rat(0));
  for (const auto& [name, v] : weights)
    w[static_cast<std::size_t>(coord_index(name))] = v;
  auto verts = vertices();
  if (verts.empty()) throw std::logic_error("max_weighted_sum: no vertices");
  Rat best(0);
  bool first = true;
  for (const auto& v : verts) {
    Rat s(0);
    for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * v[i];
    if (first || s > best) {
      best = s;
      first = false;
    }
  }
  return best;
}

std::vector<int> RateRegion::tight_vertex_counts() const {
  auto verts = vertices();
  std::vector<int> counts(ineqs_.size(), 0);
  for (std::size_t k = 0; k < ineqs_.size(); ++k) {
    for (const auto& v : verts) {
      Rat lhs(0);
      for (std::size_t i = 0; i < v.size(); ++i) lhs += ineqs_[k].a[i] * v[i];
      if (lhs == ineqs_[k].b) ++counts[k];
    }
  }
  return counts;
}

RateRegion RateRegion::irredundant() const {
  std::vector<Inequality> kept = ineqs_;
  for (std::size_t k = 0; k < kept.size();) {
    std::vector<Inequality> rest;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != k) rest.push_back(kept[j]);
    bool redundant = false;
    try {
      RateRegion sub(coords_, rest, unit_);
      std::map<std::string, Rat> w;
      for (std::size_t i = 0; i < coords_.size(); ++i)
        if (kept[k].a[i].sign() != 0) w[coords_[i]] = kept[k].a[i];
      redundant = sub.max_weighted_sum(w) <= kept[k].b;
    } catch (const std::invalid_argument&) {
      // dropping it would unbound the region: certainly irredundant
    }
    if (redundant)
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(k));
    else
      ++k;
  }
  return RateRegion(coords_, kept, unit_);
}

bool RateRegion::equals(const RateRegion& r1, const RateRegion& r2) {
  if (r1.coords_ != r2.coords_)
    throw std::invalid_argument("RateRegion::equals: coordinate mismatch");
  if (r1.unit_ != r2.unit_)
    throw std::invalid_argument("RateRegion::equals: unit mismatch");
  for (const auto& v : r1.vertices())
    if (!r2.contains(v)) return false;
  for (const auto& v : r2.vertices())
    if (!r1.contains(v)) return false;
  return true;
}

std::vector<std::pair<std::vector<Rat>, Rat>> RateRegion::decompose(
    const std::vector<Rat>& p) const {
  if (!contains(p))
    throw std::invalid_argument("decompose: point outside region");
  auto verts = vertices();

  // All constraints in (a, b) form, nonnegativity included.
  std::vector<std::pair<std::vector<Rat>, Rat>> cons;
  for (const auto& iq : ineqs_) cons.push_back({iq.a, iq.b});
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    std::vector<Rat> row(coords_.size(), Rat(0));
    row[i] = Rat(-1);
    cons.push_back({std::move(row), Rat(0)});
  }
  auto value = [&](const std::pair<std::vector<Rat>, Rat>& c,
                   const std::vector<Rat>& x) {
    Rat lhs(0);
    for (std::size_t i = 0; i < x.size(); ++i) lhs += c.first[i] * x[i];
    return lhs;
  };

  std::vector<std::pair<std::vector<Rat>, Rat>> out;
  std::vector<Rat> cur = p;
  Rat w(1);
  std::vector<bool> tight(cons.size(), false);
  for (int guard = 0; guard < 64; ++guard) {
    // vertex check
    if (std::binary_search(verts.begin(), verts.end(), cur)) {
      out.push_back({cur, w});
      return out;
    }
    // candidate vertices on the current face
    const std::vector<Rat>* v0 = nullptr;
    for (const auto& v : verts) {
      bool on_face = true;
      for (std::size_t c = 0; c < cons.size() && on_face; ++c)
        if (tight[c] && value(cons[c], v) != cons[c].second) on_face = false;
      if (on_face) {
        v0 = &v;
        break;
      }
    }
    if (!v0) throw std::logic_error("decompose: no face vertex");
    std::vector<Rat> dir(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) dir[i] = cur[i] - (*v0)[i];

    std::optional<Rat> tmax;
    for (std::size_t c = 0; c < cons.size(); ++c) {
      Rat ad(0);
      for (std::size_t i = 0; i < dir.size(); ++i) ad += cons[c].first[i] * dir[i];
      if (ad.sign() <= 0) continue;
      Rat t = (cons[c].second - value(cons[c], *v0)) / ad;
      if (!tmax || t < *tmax) tmax = t;
    }
    if (!tmax) throw std::logic_error("decompose: unbounded ray");
    // cur is feasible, so *tmax >= 1
    std::vector<Rat> q(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i)
      q[i] = (*v0)[i] + *tmax * dir[i];
    Rat lam = Rat(1) / *tmax;  // weight carried forward onto q
    if ((Rat(1) - lam).sign() > 0) out.push_back({*v0, w * (Rat(1) - lam)});
    w *= lam;
    cur = q;
    for (std::size_t c = 0; c < cons.size(); ++c)
      if (value(cons[c], cur) == cons[c].second) tight[c] = true;
  }
  throw std::logic_error("decompose: did not converge");
}

std::string RateRegion::to_json() const {
  nlohmann::json j;
  j["coords"] = coords_;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& iq : ineqs_) {
    nlohmann::json e;
    nlohmann::json av = nlohmann::json::array();
    for (const auto& c : iq.a) av.push_back(c.str());
    e["a"] = av;
    e["b"] = iq.b.str();
    if (!iq.label.empty()) e["label"] = iq.label;
    e["full_adaptation"] = iq.full_adaptation;
    arr.push_back(e);
  }
  j["ineqs"] = arr;
  j["adaptation"] = adaptation_mode();
  if (unit_ != 2) j["unit_log2_of"] = unit_;
  return j.dump(2);
}

std::string RateRegion::vertices_csv() const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ",";
    out += coords_[i];
  }
  out += "\n";
  const double ub = unit_bits();
  char buf[64];
  for (const auto& v : vertices()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.6f", v[i].to_double() * ub);
      if (i) out += ",";
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace twoway::region
