#include <doctest.h>

#include "oracles.hpp"
#include "thetacalc/errors.hpp"
#include "thetacalc/universe.hpp"
#include "thetacalc/wd_rep.hpp"

using namespace thetacalc;

namespace {

struct Split {
  EnvPtr env = Environment::default_split();
  const CharacterRegistry& reg = env->chars();
  CharId one = reg.id("1"), u = reg.id("u"), pi = reg.id("pi"), upi = reg.id("upi");
  WDRep rep(std::initializer_list<std::pair<Atom, int>> t) { return WDRep(std::vector(t)); }
};

}  // namespace

TEST_CASE("cg_decompose frozen values and weight oracle") {
  CHECK(cg_decompose(2, 2) == std::vector<int>{3, 1});
  CHECK(cg_decompose(1, 5) == std::vector<int>{5});
  CHECK(cg_decompose(4, 3) == std::vector<int>{6, 4, 2});
  for (int a = 1; a <= 9; ++a)
    for (int b = 1; b <= 9; ++b) {
      auto d = cg_decompose(a, b);
      CHECK(d == oracle::cg_by_weights(a, b));
      CHECK(d == cg_decompose(b, a));
      CHECK(static_cast<int>(d.size()) == std::min(a, b));
      int sum = 0;
      for (int e : d) {
        sum += e;
        CHECK((e - (a + b - 1)) % 2 == 0);
      }
      CHECK(sum == a * b);
    }
}

TEST_CASE("tensor_S, twist and multiplicity") {
  Split s;
  WDRep phi = s.rep({{Atom::chain(s.one, 2), 1}, {Atom::chain(s.one, 4), 1}});
  WDRep expect = s.rep({{Atom::chain(s.one, 2), 2}, {Atom::chain(s.one, 4), 2},
                        {Atom::chain(s.one, 6), 1}});
  CHECK(tensor_S(*s.env, phi, 3) == expect);
  CHECK(tensor_S(*s.env, phi, 1) == phi);
  CHECK(tensor_S(*s.env, s.rep({{Atom::chain(s.u, 2), 1}}), 2) ==
        s.rep({{Atom::chain(s.u, 3), 1}, {Atom::chain(s.u, 1), 1}}));
  CHECK(twist(*s.env, s.rep({{Atom::chain(s.pi, 4), 1}}), s.pi) ==
        s.rep({{Atom::chain(s.one, 4), 1}}));
  WDRep mixed = s.rep({{Atom::chain(s.one, 2), 1}, {Atom::chain(s.u, 2), 1}});
  CHECK(twist(*s.env, mixed, s.u) == mixed);
  CHECK(twist(*s.env, phi, s.one) == phi);
  CHECK(multiplicity(phi, s.one, 2) == 1);
  CHECK(multiplicity(s.rep({{Atom::chain(s.u, 2), 2}}), s.u, 2) == 2);
  CHECK(multiplicity(phi, s.u, 2) == 0);
}

TEST_CASE("classify_duality") {
  Split s;
  auto c1 = classify_duality(*s.env, s.rep({{Atom::chain(s.one, 2), 1}, {Atom::chain(s.one, 4), 1}}));
  CHECK(c1.primary() == Duality::symplectic);
  CHECK(c1.det == s.one);
  auto c2 = classify_duality(*s.env, s.rep({{Atom::chain(s.one, 1), 1}, {Atom::chain(s.pi, 1), 1}}));
  CHECK(c2.primary() == Duality::orthogonal);
  CHECK(c2.det == s.pi);
  auto c3 = classify_duality(*s.env, WDRep{});
  CHECK(c3.primary() == Duality::orthogonal);
  CHECK(c3.det == s.one);
  // Opposite-type atoms in pairs, and shifted pairs, are admissible for both signs.
  auto c4 = classify_duality(*s.env, s.rep({{Atom::chain(s.u, 1, 1), 1}, {Atom::chain(s.u, 1, -1), 1},
                                            {Atom::chain(s.one, 2), 1}}));
  CHECK(c4.admits_minus);
  CHECK_FALSE(c4.admits_plus);
  auto c5 = classify_duality(*s.env, s.rep({{Atom::chain(s.u, 1, 1), 1}}));
  CHECK(c5.primary() == Duality::none);
}

TEST_CASE("dual is an involution and negates shifts") {
  Split s;
  WDRep phi = s.rep({{Atom::chain(s.one, 2), 1}, {Atom::chain(s.one, 4), 1}});
  CHECK(dual(*s.env, phi) == phi);
  CHECK(dual(*s.env, s.rep({{Atom::chain(s.u, 1, 1), 1}})) == s.rep({{Atom::chain(s.u, 1, -1), 1}}));
  WDRep shifted = s.rep({{Atom::chain(s.pi, 3, 3), 2}, {Atom::chain(s.upi, 2), 1}});
  CHECK(dual(*s.env, dual(*s.env, shifted)) == shifted);
}

TEST_CASE("tensor_S preserves dimension and flips sign by (-1)^{r-1}") {
  Split s;
  for (int dim = 1; dim <= 6; ++dim)
    for (Sign b : {Sign::plus(), Sign::minus()})
      for (const WDRep& phi : enumerate_self_dual(*s.env, dim, b, 8))
        for (int r = 1; r <= 8; ++r) {
          WDRep t = tensor_S(*s.env, phi, r);
          CHECK(dimension(*s.env, t) == r * dim);
          CHECK(classify_duality(*s.env, t).admits(b * Sign::parity(r - 1)));
          for (CharId chi = 0; chi < s.reg.size(); ++chi)
            CHECK(twist(*s.env, twist(*s.env, phi, chi), chi) == phi);
        }
}

TEST_CASE("canonical order and names") {
  Split s;
  WDRep phi = s.rep({{Atom::chain(s.u, 1, 1), 1}, {Atom::chain(s.u, 2), 1},
                     {Atom::chain(s.one, 4), 1}, {Atom::chain(s.u, 1, -1), 1}});
  CHECK(to_string(*s.env, phi) == "S4 + u.S2 + u.S1@1/2 + u.S1@-1/2");
  CHECK(atom_name(*s.env, Atom::chain(s.one, 3, 4)) == "S3@2");
  CHECK_THROWS_AS(phi.remove(Atom::chain(s.pi, 2)), Error);
}
