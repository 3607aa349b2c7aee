#include <doctest.h>

#include "oracles.hpp"
#include "thetacalc/errors.hpp"
#include "thetacalc/local_factors.hpp"
#include "thetacalc/universe.hpp"

using namespace thetacalc;

namespace {

struct Split {
  EnvPtr env = Environment::default_split();
  const CharacterRegistry& reg = env->chars();
  CharId one = reg.id("1"), u = reg.id("u"), pi = reg.id("pi"), upi = reg.id("upi");
  WDRep rep(std::initializer_list<std::pair<Atom, int>> t) { return WDRep(std::vector(t)); }
};

}  // namespace

TEST_CASE("eps_S_tensor frozen values and oracle") {
  CHECK(eps_S_tensor(1, 2) == Sign::minus());
  CHECK(eps_S_tensor(2, 3) == Sign::plus());
  CHECK(eps_S_tensor(4, 3) == Sign::minus());
  CHECK_THROWS_AS(eps_S_tensor(2, 4), Error);
  Split s;
  for (int a = 1; a <= 9; ++a)
    for (int b = 1; b <= 9; ++b) {
      if ((a - b) % 2 == 0) continue;
      Sign expect = Sign::plus();
      for (int e : oracle::cg_by_weights(a, b))
        expect *= oracle::eps_even_by_definition(*s.env, s.one, e);
      CHECK(eps_S_tensor(a, b) == expect);
    }
}

TEST_CASE("eps_quad_even frozen values and definition oracle") {
  Split s;
  CHECK(eps_quad_even(*s.env, s.one, 1) == Sign::minus());
  CHECK(eps_quad_even(*s.env, s.u, 1) == Sign::plus());
  CHECK(eps_quad_even(*s.env, s.pi, 2) == Sign::plus());
  CHECK(eps_quad_even(*s.env, s.pi, 1) == Sign::minus());
  for (CharId chi = 0; chi < s.reg.size(); ++chi)
    for (int k = 1; k <= 4; ++k)
      CHECK(eps_quad_even(*s.env, chi, k) == oracle::eps_even_by_definition(*s.env, chi, 2 * k));
}

TEST_CASE("root_number") {
  Split s;
  auto psi = AdditiveCharTag::psi();
  CHECK(root_number(*s.env, s.rep({{Atom::chain(s.one, 2), 1}, {Atom::chain(s.one, 4), 1}}), psi) ==
        Sign::plus());
  CHECK(root_number(*s.env, WDRep{}, psi) == Sign::plus());
  // Dual pair with chi(-1) = +1.
  CHECK(root_number(*s.env, s.rep({{Atom::chain(s.u, 1, 1), 1}, {Atom::chain(s.u, 1, -1), 1}}), psi) ==
        Sign::plus());
  // Dual pair phi0 + phi0^v contributes det(phi0)(-1) over E = F.
  CHECK(root_number(*s.env, s.rep({{Atom::chain(s.pi, 1, 1), 1}, {Atom::chain(s.pi, 1, -1), 1}}), psi) ==
        Sign::minus());
  CHECK(root_number(*s.env, s.rep({{Atom::chain(s.pi, 1), 2}}), psi) == Sign::minus());
  CHECK(root_number(*s.env, s.rep({{Atom::chain(s.one, 3), 1}}), psi) == Sign::plus());
  // Twist inside the query.
  CHECK(root_number(*s.env, RootNumberQuery{s.rep({{Atom::chain(s.u, 2), 1}}), s.u, psi}) ==
        Sign::minus());
  try {
    root_number(*s.env, s.rep({{Atom::chain(s.pi, 1), 1}}), psi);
    FAIL("expected MissingRootData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingRootData);
    CHECK(std::string(e.what()).find("pi.S1") != std::string::npos);
  }
}

TEST_CASE("root_number is multiplicative on the closed-form universe") {
  Split s;
  std::vector<WDRep> small;
  for (int d = 2; d <= 6; d += 2)
    for (auto& r : enumerate_self_dual(*s.env, d, Sign::minus(), 6)) small.push_back(r);
  for (const auto& a : small)
    for (const auto& b : small)
      CHECK(root_number(*s.env, a + b) == root_number(*s.env, a) * root_number(*s.env, b));
}

TEST_CASE("eps_scale") {
  Split s;
  CHECK(eps_scale(*s.env, s.rep({{Atom::chain(s.one, 2), 1}}), "u") == Sign::plus());
  CHECK(eps_scale(*s.env, s.rep({{Atom::chain(s.u, 1), 1}}), "pi") == Sign::minus());
  CHECK(eps_scale(*s.env, WDRep{}, "pi") == Sign::plus());
  CHECK_THROWS_AS(eps_scale(*s.env, s.rep({{Atom::chain(s.u, 1), 1}}), "zeta"), Error);
}

TEST_CASE("alpha_l: multiplicity form equals defining ratio") {
  Split s;
  CHECK(alpha_l(*s.env, s.rep({{Atom::chain(s.one, 2), 1}}), 2) == Sign::minus());
  CHECK(alpha_l(*s.env, s.rep({{Atom::chain(s.one, 2), 2}}), 2) == Sign::plus());
  CHECK(alpha_l(*s.env, s.rep({{Atom::chain(s.one, 4), 1}}), 2) == Sign::plus());
  CHECK_THROWS_AS(alpha_l(*s.env, s.rep({{Atom::chain(s.one, 3), 1}}), 2), Error);
  for (int l = 1; l <= 7; ++l) {
    Sign b = Sign::parity(l - 1);
    for (int d = 1; d <= 8; ++d)
      for (const auto& phi : enumerate_self_dual(*s.env, d, b, 8)) {
        if ((l % 2 == 1) != (d % 2 == 1) && l % 2 == 0) continue;
        bool closed = true;
        try {
          (void)alpha_l_by_ratio(*s.env, phi, l);
        } catch (const Error&) {
          closed = false;
        }
        if (!closed) continue;
        CHECK(alpha_l(*s.env, phi, l) == alpha_l_by_ratio(*s.env, phi, l));
      }
  }
}

TEST_CASE("twisted_eps frozen values") {
  Split s;
  WDRep p24 = s.rep({{Atom::chain(s.one, 2), 1}, {Atom::chain(s.one, 4), 1}});
  CHECK(twisted_eps(*s.env, p24, s.one, 4, TwistSide::minus) == Sign::minus());
  CHECK(oracle_twisted_eps(*s.env, p24, s.one, 4, TwistSide::minus) == Sign::minus());
  WDRep p13 = s.rep({{Atom::chain(s.one, 1), 1}, {Atom::chain(s.one, 3), 1}});
  // eps(phi S2) det(phi)(-1) = (-1)^{m(S1)}; det(phi) trivial.
  CHECK(twisted_eps(*s.env, p13, s.one, 3, TwistSide::minus) == Sign::minus());
  CHECK(oracle_twisted_eps(*s.env, p13, s.one, 3, TwistSide::minus) == Sign::minus());
  WDRep p4 = s.rep({{Atom::chain(s.one, 4), 1}});
  CHECK(twisted_eps(*s.env, p4, s.one, 2, TwistSide::minus) == root_number(*s.env, p4));
  CHECK(oracle_twisted_eps(*s.env, s.rep({{Atom::chain(s.one, 2), 1}}), s.one, 2, TwistSide::minus) ==
        Sign::minus());
  CHECK(oracle_twisted_eps(*s.env, s.rep({{Atom::chain(s.u, 2), 1}}), s.one, 2, TwistSide::minus) ==
        Sign::plus());
  // Running example ratios on the up tower: eps(S2 S5) = +1, eps(S4 S5) = +1.
  CHECK(twisted_eps(*s.env, s.rep({{Atom::chain(s.one, 2), 1}}), s.one, 4, TwistSide::plus) == Sign::plus());
  CHECK(twisted_eps(*s.env, s.rep({{Atom::chain(s.one, 4), 1}}), s.one, 4, TwistSide::plus) == Sign::plus());
  CHECK_THROWS_AS(oracle_twisted_eps(*s.env, s.rep({{Atom::chain(s.one, 2), 1}}), s.one, 3,
                                     TwistSide::minus),
                  Error);
  CHECK_THROWS_AS(twisted_eps(*s.env, p24, s.one, 3, TwistSide::minus), Error);
}

TEST_CASE("epsilon_of_tensor for cross-parity chain pairs") {
  Split s;
  auto psi = AdditiveCharTag::psi();
  WDRep s4 = s.rep({{Atom::chain(s.one, 4), 1}});
  WDRep s3 = s.rep({{Atom::chain(s.one, 3), 1}});
  CHECK(epsilon_of_tensor(*s.env, s4, s3, s.one, psi) == Sign::minus());
  WDRep a = s.rep({{Atom::chain(s.one, 1), 1}, {Atom::chain(s.pi, 1), 1}});
  WDRep b = s.rep({{Atom::chain(s.one, 2), 1}});
  // eps(S2) eps(pi.S2) = (-1)(-(-1)(-1)) = +1.
  CHECK(epsilon_of_tensor(*s.env, a, b, s.one, psi) == Sign::plus());
}

TEST_CASE("gamma identity on Weil atoms") {
  Split s;
  std::vector<Rational> samples = {{0, 1}, {1, 2}, {-1, 3}, {5, 4}};
  CHECK(gamma_identity_check(*s.env, s.rep({{Atom::chain(s.one, 1), 1}}), 1, samples));
  for (CharId chi = 0; chi < s.reg.size(); ++chi)
    for (int l = 1; l <= 6; ++l)
      CHECK(gamma_identity_check(*s.env, s.rep({{Atom::chain(chi, 1), 1}}), l, samples));
  CHECK(gamma_identity_check(*s.env, s.rep({{Atom::chain(s.pi, 1, 1), 1}, {Atom::chain(s.pi, 1, -1), 1}}), 3,
                             samples));
  CHECK_THROWS_AS(gamma_identity_check(*s.env, s.rep({{Atom::chain(s.one, 2), 1}}), 2, samples), Error);
}
