#include <sstream>

#include "kickci/integrals.hpp"
#include "test_util.hpp"

using namespace kickci;

TEST_CASE("fcidump: header and record mapping") {
  const IntegralSet ints = parse_fcidump(
      "&FCI NORB=1,NELEC=2,MS2=0 &END\n"
      "1.0 1 1 0 0\n"
      "0.5 1 1 1 1\n"
      "0.1 0 0 0 0\n");
  CHECK(ints.norb() == 1);
  CHECK(ints.nalpha() == 1);
  CHECK(ints.nbeta() == 1);
  CHECK(ints.h(0, 0) == 1.0);
  CHECK(ints.eri(0, 0, 0, 0) == 0.5);
  CHECK(ints.e_core() == 0.1);
}

TEST_CASE("fcidump: one record fills all eight symmetry images") {
  const IntegralSet ints = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0 &END\n0.3 2 1 1 1\n");
  CHECK(ints.eri(0, 0, 0, 1) == 0.3);
  const int idx[4] = {1, 0, 0, 0};
  const int perms[8][4] = {{0, 1, 2, 3}, {1, 0, 2, 3}, {0, 1, 3, 2}, {1, 0, 3, 2},
                           {2, 3, 0, 1}, {3, 2, 0, 1}, {2, 3, 1, 0}, {3, 2, 1, 0}};
  for (const auto& p : perms) CHECK(ints.eri(idx[p[0]], idx[p[1]], idx[p[2]], idx[p[3]]) == 0.3);
}

TEST_CASE("fcidump: multi-line namelist, slash terminator, Fortran exponents") {
  const IntegralSet ints = parse_fcidump(
      " &FCI NORB=  2,NELEC=2,MS2=0,\n  ORBSYM=1,1,\n  ISYM=1,\n /\n"
      "  0.25D+00   1   1   2   2\n  -1.0d0 2 1 0 0\n");
  CHECK(ints.eri(1, 1, 0, 0) == 0.25);
  CHECK(ints.h(0, 1) == -1.0);
  CHECK(ints.orbsym() == std::vector<int>{1, 1});
}

TEST_CASE("fcidump: errors") {
  CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=3,MS2=0 &END\n"), InputError);
  CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2 &END\n"), InputError);
  CHECK_THROWS_AS(parse_fcidump("NORB=2,NELEC=2,MS2=0 &END\n"), InputError);
  CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0\n1.0 1 1 0 0\n"), InputError);
  CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0 &END\n1.0 3 1 0 0\n"), InputError);
  CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0 &END\n1.0 1 1 0\n"), InputError);
  CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0 &END\nabc 1 1 0 0\n"), InputError);
  CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,NORB=3 &END\n"), InputError);
  // Conflicting symmetry images.
  CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0 &END\n0.3 2 1 1 1\n0.4 1 1 1 2\n"),
                  InputError);
  // Repeats within tolerance are fine.
  CHECK_NOTHROW(parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0 &END\n0.3 2 1 1 1\n0.3 1 1 1 2\n"));
  CHECK_THROWS_AS(read_fcidump("/nonexistent/file.fcidump"), InputError);
}

TEST_CASE("fcidump: orbital-energy records are ignored") {
  const IntegralSet ints = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0 &END\n-0.5 1 0 0 0\n");
  CHECK(ints.h().norm() == 0.0);
}

TEST_CASE("fcidump: write then parse is exact") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    IntegralSet a = testing::random_integrals(4, 4, 0, seed);
    a.set_e_core(-1.0 / 3.0);
    std::ostringstream os;
    write_fcidump(os, a);
    const IntegralSet b = parse_fcidump(os.str());
    CHECK(b.norb() == a.norb());
    CHECK(b.nelec() == a.nelec());
    CHECK(b.ms2() == a.ms2());
    CHECK(b.e_core() == a.e_core());
    CHECK((a.h() - b.h()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.dense_eri() == b.dense_eri());
  }
}

TEST_CASE("integral set: symmetric h and 8-fold eri") {
  const IntegralSet ints = testing::random_integrals(3, 2, 0, 5);
  CHECK((ints.h() - ints.h().transpose()).norm() == 0.0);
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q)
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) {
          const double v = ints.eri(p, q, r, s);
          CHECK(ints.eri(q, p, r, s) == v);
          CHECK(ints.eri(p, q, s, r) == v);
          CHECK(ints.eri(r, s, p, q) == v);
          CHECK(ints.eri(s, r, q, p) == v);
        }
  CHECK_THROWS_AS(IntegralSet(0, 0, 0), InputError);
  CHECK_THROWS_AS(IntegralSet(2, 5, 1), InputError);
  CHECK_THROWS_AS(IntegralSet(2, 2, 1), InputError);
}

TEST_CASE("operator file") {
  const OneBodyOperator z = parse_operator_file("&OPER NORB=2 LABEL=z &END\n0.7 1 2 0 0\n");
  CHECK(z.label == "z");
  CHECK(z.matrix(0, 1) == cplx(0.7));
  CHECK(z.matrix(1, 0) == cplx(0.7));
  CHECK(z.matrix(0, 0) == cplx(0.0));
  CHECK(z.is_hermitian());

  const OneBodyOperator empty = parse_operator_file("&OPER NORB=3 &END\n");
  CHECK(empty.matrix.norm() == 0.0);

  CHECK_THROWS_AS(parse_operator_file("&OPER NORB=2 &END\n0.2 1 1 1 1\n"), InputError);
  CHECK_THROWS_AS(parse_operator_file("&OPER NORB=2 &END\n0.2 0 0 0 0\n"), InputError);

  std::ostringstream os;
  write_operator_file(os, z);
  const OneBodyOperator back = parse_operator_file(os.str());
  CHECK(back.matrix == z.matrix);

  CHECK_THROWS_AS(validate_operator(z, make_hubbard_model(3, 1, 1, false)), InputError);
  CHECK_NOTHROW(validate_operator(z, make_hubbard_model(2, 1, 1, false)));
}

TEST_CASE("hubbard model construction") {
  const IntegralSet d = make_hubbard_model(2, 1.0, 4.0, false);
  CHECK(d.h(0, 1) == -1.0);
  CHECK(d.h(0, 0) == 0.0);
  CHECK(d.eri(0, 0, 0, 0) == 4.0);
  CHECK(d.eri(1, 1, 1, 1) == 4.0);
  CHECK(d.eri(0, 0, 1, 1) == 0.0);
  CHECK(d.nelec() == 2);

  const IntegralSet ring = make_hubbard_model(6, 1.0, 0.0, true);
  CHECK(ring.h(0, 5) == -1.0);
  CHECK(ring.nalpha() == 3);
  const IntegralSet chain = make_hubbard_model(6, 1.0, 0.0, false);
  CHECK(chain.h(0, 5) == 0.0);
}
