#include "gmalab/group.hpp"

#include <algorithm>
#include <numeric>

namespace gmalab {

namespace {

// greedy generating set: repeatedly add an element outside the current closure
std::vector<int> greedy_generators(const std::vector<std::vector<int>>& t) {
  std::size_t n = t.size();
  std::vector<char> in(n, 0);
  in[0] = 1;
  std::size_t have = 1;
  std::vector<int> gens;
  for (std::size_t cand = 1; cand < n && have < n; ++cand) {
    if (in[cand]) continue;
    gens.push_back((int)cand);
    std::vector<int> frontier{(int)cand};
    in[cand] = 1;
    ++have;
    while (!frontier.empty()) {
      int g = frontier.back();
      frontier.pop_back();
      for (std::size_t h = 0; h < n; ++h) {
        if (!in[h]) continue;
        for (int prod : {t[g][h], t[h][g]})
          if (!in[prod]) {
            in[prod] = 1;
            ++have;
            frontier.push_back(prod);
          }
      }
    }
  }
  return gens;
}

} // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  std::size_t n = table.size();
  require(n >= 1 && n <= closure_cap, errc::closure_too_large, "group order out of range");
  for (const auto& row : table) {
    require(row.size() == n, errc::not_a_group, "multiplication table is not square");
    for (int x : row) require(x >= 0 && (std::size_t)x < n, errc::not_a_group,
                              "table entry out of range");
  }
  for (std::size_t g = 0; g < n; ++g)
    require(table[0][g] == (int)g && table[g][0] == (int)g, errc::not_a_group,
            "index 0 is not an identity");
  FiniteGroup G;
  G.n = n;
  G.inv.assign(n, -1);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h)
      if (table[g][h] == 0 && table[h][g] == 0) G.inv[g] = (int)h;
    require(G.inv[g] >= 0, errc::not_a_group, "element has no two-sided inverse");
  }
  G.gens = greedy_generators(table);
  // Light's associativity test: with a generating set it is enough to check
  // a(bg) = (ab)g for all a, b and generators g
  if (n <= 128) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          require(table[table[a][b]][c] == table[a][table[b][c]], errc::not_a_group,
                  "multiplication is not associative");
  } else {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (int g : G.gens)
          require(table[table[a][b]][g] == table[a][table[b][g]], errc::not_a_group,
                  "multiplication is not associative");
  }
  G.table = std::move(table);
  return G;
}

FiniteGroup FiniteGroup::cyclic(int m) {
  require(m >= 1, errc::bad_scenario, "cyclic group order must be positive");
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  return from_table(std::move(t));
}

FiniteGroup FiniteGroup::dihedral(int k) { return semidirect(k, 2, k - 1); }

FiniteGroup FiniteGroup::semidirect(int m, int k, int t) {
  require(m >= 2 && k >= 2, errc::bad_scenario, "semidirect factors must be nontrivial");
  long long tk = 1;
  for (int i = 0; i < k; ++i) tk = (tk * t) % m;
  require(tk % m == 1 % m, errc::bad_scenario, "action order does not divide k");
  require(std::gcd(t, m) == 1, errc::bad_scenario, "action must be invertible");
  // element (a, b) has index a + m*b; (a1,b1)(a2,b2) = (a1 + t^b1 a2, b1 + b2)
  int n = m * k;
  std::vector<long long> tpow(k, 1);
  for (int b = 1; b < k; ++b) tpow[b] = (tpow[b - 1] * t) % m;
  std::vector<std::vector<int>> tab(n, std::vector<int>(n));
  for (int a1 = 0; a1 < m; ++a1)
    for (int b1 = 0; b1 < k; ++b1)
      for (int a2 = 0; a2 < m; ++a2)
        for (int b2 = 0; b2 < k; ++b2) {
          int a = (int)((a1 + tpow[b1] * a2) % m);
          int b = (b1 + b2) % k;
          tab[a1 + m * b1][a2 + m * b2] = a + m * b;
        }
  return from_table(std::move(tab));
}

FiniteGroup FiniteGroup::quaternion8() {
  // element 2s + eps is (-1)^eps * u_s for units u = (1, i, j, k)
  static const int sym[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int s = sgn[a >> 1][b >> 1];
      if (a & 1) s = -s;
      if (b & 1) s = -s;
      t[a][b] = 2 * sym[a >> 1][b >> 1] + (s == 1 ? 0 : 1);
    }
  return from_table(std::move(t));
}

int FiniteGroup::power(int g, long long k) const {
  int ord = element_order(g);
  k %= ord;
  if (k < 0) k += ord;
  int r = 0;
  for (long long i = 0; i < k; ++i) r = mul(r, g);
  return r;
}

int FiniteGroup::element_order(int g) const {
  int x = g, ord = 1;
  while (x != 0) {
    x = mul(x, g);
    ++ord;
  }
  return ord;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = g + 1; h < n; ++h)
      if (table[g][h] != table[h][g]) return false;
  return true;
}

std::pair<FiniteGroup, std::vector<int>> subgroup(const FiniteGroup& G,
                                                  const std::vector<int>& gens) {
  std::vector<int> elems{0};
  std::vector<char> in(G.order(), 0);
  in[0] = 1;
  for (int g : gens) {
    require(g >= 0 && (std::size_t)g < G.order(), errc::bad_scenario,
            "subgroup generator out of range");
    if (!in[g]) {
      in[g] = 1;
      elems.push_back(g);
    }
  }
  for (std::size_t at = 0; at < elems.size(); ++at)
    for (std::size_t b = 0; b < elems.size(); ++b)
      for (int prod : {G.mul(elems[at], elems[b]), G.mul(elems[b], elems[at])})
        if (!in[prod]) {
          in[prod] = 1;
          elems.push_back(prod);
        }
  std::sort(elems.begin(), elems.end());
  std::vector<int> where(G.order(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) where[elems[i]] = (int)i;
  std::vector<std::vector<int>> tab(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b)
      tab[a][b] = where[G.mul(elems[a], elems[b])];
  return {FiniteGroup::from_table(std::move(tab)), std::move(elems)};
}

} // namespace gmalab
