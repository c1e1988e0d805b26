#include "ccloop/fixtures.hpp"

#include <algorithm>
#include <numeric>

#include "ccloop/construct.hpp"
#include "fixture_data.hpp"

namespace ccloop::fixtures {

std::string_view t16_text() { return kT16Text; }
std::string_view t27_text() { return kT27Text; }

const LoopTable& t16() {
  static const LoopTable q = parse_tbl(kT16Text);
  return q;
}

const LoopTable& t27() {
  static const LoopTable q = parse_tbl(kT27Text);
  return q;
}

LoopTable cyclic(int n) {
  std::vector<std::vector<Elem>> g(static_cast<std::size_t>(n), std::vector<Elem>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
  return LoopTable::from_rows(g);
}

LoopTable abelian(std::initializer_list<int> factors) {
  LoopTable q = cyclic(1);
  for (int f : factors) q = direct_product(q, cyclic(f));
  return q;
}

LoopTable dihedral(int m) {
  const int n = 2 * m;
  std::vector<std::vector<Elem>> g(static_cast<std::size_t>(n), std::vector<Elem>(static_cast<std::size_t>(n)));
  // r^i = i, s r^i = m + i; (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j)
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int a = x / m, i = x % m, b = y / m, j = y % m;
      const int rot = ((b ? -i : i) + j + m) % m;
      g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = ((a + b) % 2) * m + rot;
    }
  return LoopTable::from_rows(g);
}

LoopTable quaternion() {
  // 0=1, 1=i, 2=j, 3=k, 4..7 their negatives
  static const int unit[4][4][2] = {{{0, 1}, {1, 1}, {2, 1}, {3, 1}},
                                    {{1, 1}, {0, -1}, {3, 1}, {2, -1}},
                                    {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
                                    {{3, 1}, {2, 1}, {1, -1}, {0, -1}}};
  std::vector<std::vector<Elem>> g(8, std::vector<Elem>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const auto& u = unit[x % 4][y % 4];
      const int sign = u[1] * (x >= 4 ? -1 : 1) * (y >= 4 ? -1 : 1);
      g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = u[0] + (sign < 0 ? 4 : 0);
    }
  return LoopTable::from_rows(g);
}

LoopTable symmetric(int k) {
  std::vector<Elem> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> elems;
  do elems.emplace_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return permutation_group_table(elems);
}

namespace {

int cd_sign(int i, int j, int dim) {
  if (dim == 1) return 1;
  const int h = dim / 2;
  if (i < h && j < h) return cd_sign(i, j, h);
  if (i < h) return cd_sign(j - h, i, h);
  if (j < h) return cd_sign(i - h, j, h) * (j == 0 ? 1 : -1);
  const int ip = i - h, jp = j - h;
  return -(jp == 0 ? 1 : -1) * cd_sign(jp, ip, h);
}

}  // namespace

LoopTable octonion_loop() {
  std::vector<std::vector<Elem>> g(16, std::vector<Elem>(16));
  for (int x = 0; x < 16; ++x)
    for (int y = 0; y < 16; ++y) {
      const int i = x % 8, j = y % 8;
      const int sign = cd_sign(i, j, 8) * (x >= 8 ? -1 : 1) * (y >= 8 ? -1 : 1);
      g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = (i ^ j) + (sign < 0 ? 8 : 0);
    }
  return LoopTable::from_rows(g);
}

LoopTable non_cc_order5() {
  return LoopTable::from_rows(std::vector<std::vector<Elem>>{
      {0, 1, 2, 3, 4}, {1, 3, 0, 4, 2}, {2, 4, 3, 1, 0}, {3, 0, 4, 2, 1}, {4, 2, 1, 0, 3}});
}

LoopTable random_relabel(const LoopTable& q, std::mt19937_64& rng) {
  std::vector<Elem> img(static_cast<std::size_t>(q.order()));
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin() + 1, img.end(), rng);
  return relabel(q, Perm(std::move(img)));
}

namespace {

// Z_m x| Z_k with the generator of Z_k acting by multiplication by u, where
// u^k = 1 mod m.
std::optional<LoopTable> metacyclic(int m, int k, int u) {
  long long t = 1;
  for (int i = 0; i < k; ++i) t = t * u % m;
  if (t != 1 % m || std::gcd(u, m) != 1) return std::nullopt;
  std::vector<Perm> phi;
  long long mult = 1;
  for (int b = 0; b < k; ++b) {
    std::vector<Elem> img(static_cast<std::size_t>(m));
    for (int x = 0; x < m; ++x) img[static_cast<std::size_t>(x)] = static_cast<Elem>(x * mult % m);
    phi.emplace_back(std::move(img));
    mult = mult * u % m;
  }
  return semidirect(ActionMap(cyclic(k), cyclic(m), std::move(phi)));
}

LoopTable small_group(std::mt19937_64& rng, int max_order, bool allow_products = true) {
  for (;;) {
    const int kind = static_cast<int>(rng() % (allow_products && max_order >= 4 ? 7 : 5));
    switch (kind) {
      case 0: {
        const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_order));
        return cyclic(n);
      }
      case 1: {
        const int m = 2 + static_cast<int>(rng() % 10);
        if (2 * m <= max_order) return dihedral(m);
        break;
      }
      case 2:
        if (max_order >= 8) return quaternion();
        break;
      case 3:
        if (max_order >= 24 && rng() % 4 == 0) return symmetric(4);
        if (max_order >= 6) return symmetric(3);
        break;
      case 4: {
        const int m = 3 + static_cast<int>(rng() % 11);
        const int k = 2 + static_cast<int>(rng() % 4);
        const int u = 2 + static_cast<int>(rng() % static_cast<unsigned>(m - 2));
        if (m * k <= max_order)
          if (auto g = metacyclic(m, k, u)) return *g;
        break;
      }
      default: {
        auto a = small_group(rng, max_order / 2, false);
        auto b = small_group(rng, max_order / a.order(), false);
        return direct_product(a, b);
      }
    }
  }
}

}  // namespace

LoopTable random_group(std::mt19937_64& rng, int max_order) {
  return random_relabel(small_group(rng, max_order), rng);
}

}  // namespace ccloop::fixtures
