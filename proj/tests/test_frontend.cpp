#include <gtest/gtest.h>

#include <random>

#include "acheck/errors.hpp"
#include "acheck/polyir.hpp"
#include "acheck/r1cs.hpp"
#include "r1cs_support.hpp"
#include "support.hpp"

using namespace acheck;

using ts::encode;
using ts::random_r1cs;
using ts::put_u32;
using ts::put_u64;

TEST(R1cs, MinimalHandBuiltFile) {
  R1csFile f;
  f.n_wires = 3;
  f.n_pub_out = 1;
  f.n_pub_in = 1;
  f.n_labels = 3;
  f.constraints.push_back({{{1, FieldElement(f.prime, 1)}}, {{2, FieldElement(f.prime, 1)}}, {}});
  auto bytes = encode(f);
  EXPECT_EQ(bytes[0], 0x72);
  EXPECT_EQ(bytes[1], 0x31);
  EXPECT_EQ(bytes[2], 0x63);
  EXPECT_EQ(bytes[3], 0x73);
  R1csFile back = parse_r1cs(bytes);
  EXPECT_EQ(back.constraints.size(), 1u);
  EXPECT_EQ(back, f);
  EXPECT_EQ(write_r1cs(back), bytes);
}

TEST(R1cs, DecoderFixtureMatchesBuilder) {
  auto bytes = read_binary_file(ts::fixture("decoder.r1cs"));
  EXPECT_EQ(parse_r1cs(bytes), ts::decoder_r1cs());
  EXPECT_EQ(write_r1cs(ts::decoder_r1cs()), bytes);
}

TEST(R1cs, Errors) {
  EXPECT_THROW(parse_r1cs(std::vector<std::uint8_t>{}), FormatError);
  auto good = encode(ts::decoder_r1cs());

  auto bad_magic = good;
  bad_magic[0] = 'x';
  EXPECT_THROW(parse_r1cs(bad_magic), FormatError);

  auto bad_version = good;
  bad_version[4] = 2;
  try {
    parse_r1cs(bad_version);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }

  auto truncated = good;
  truncated.resize(good.size() - 10);
  EXPECT_THROW(parse_r1cs(truncated), FormatError);

  // a second header section
  auto dup = good;
  dup[8] = 4;  // four sections
  std::vector<std::uint8_t> hdr(good.begin() + 12, good.begin() + 12 + 12 + 64);
  dup.insert(dup.end(), hdr.begin(), hdr.end());
  EXPECT_THROW(parse_r1cs(dup), FormatError);
}

TEST(R1cs, UnknownSectionsAreSkipped) {
  auto bytes = encode(ts::decoder_r1cs());
  bytes[8] = 4;
  put_u32(bytes, 99);
  put_u64(bytes, 3);
  bytes.insert(bytes.end(), {1, 2, 3});
  EXPECT_EQ(parse_r1cs(bytes), ts::decoder_r1cs());
}

TEST(R1cs, ZeroConstraints) {
  R1csFile f;
  f.n_wires = 2;
  f.n_pub_in = 1;
  EXPECT_TRUE(parse_r1cs(encode(f)).constraints.empty());
}

TEST(R1csProperty, RoundTripIsByteExact) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    R1csFile f = random_r1cs(rng);
    auto bytes = write_r1cs(f);
    EXPECT_EQ(bytes, encode(f));
    R1csFile back = parse_r1cs(bytes);
    EXPECT_EQ(back, f);
    EXPECT_EQ(write_r1cs(back), bytes);
  }
}

TEST(Sym, Parse) {
  auto t = parse_sym("1,1,0,main.inp\n");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0], (SymRow{1, 1, 0, "main.inp"}));
  EXPECT_TRUE(parse_sym("").empty());
  EXPECT_THROW(parse_sym("x,y"), FormatError);
  EXPECT_THROW(parse_sym("1,a,0,main.x"), FormatError);
  EXPECT_THROW(parse_sym("1,1,0,a\n2,2,0,a\n"), FormatError);
  EXPECT_EQ(parse_sym("1,-1,0,main.gone\n")[0].wire, -1);
}

TEST(Lowering, DecoderMatchesWorkedExample) {
  ConstraintSystem s = lower_r1cs(ts::decoder_r1cs(), parse_sym(ts::kDecoderSym));
  auto inp = s.find("main.inp"), o0 = s.find("main.out0"), o1 = s.find("main.out1"), sc = s.find("main.success");
  ASSERT_TRUE(inp && o0 && o1 && sc);
  EXPECT_EQ(inp->kind, VarKind::Known);
  EXPECT_EQ(s.outputs().size(), 3u);
  EXPECT_TRUE(s.of_kinds(kind_bit(VarKind::Temp)).empty());
  ASSERT_EQ(s.constraints().size(), 3u);
  EXPECT_EQ(s.constraints()[0], s.var(*o0) * s.var(*inp));
  EXPECT_EQ(s.constraints()[1], s.var(*o1) * (s.var(*inp) - s.constant(1)));
  EXPECT_EQ(s.constraints()[2], s.var(*sc) * (s.var(*sc) - s.constant(1)));
}

TEST(Lowering, ConstantRowsAndEmptyA) {
  R1csFile f;
  f.prime = Prime(7ul);
  f.field_size_bytes = 8;
  f.n_wires = 2;
  f.n_pub_out = 1;
  auto t = [&](std::uint32_t w, long c) { return LinearTerm{w, FieldElement(f.prime, c)}; };
  f.constraints = {{{t(0, 2)}, {t(0, 3)}, {t(0, 1)}},  // 2*3 + 1 = 0 mod 7 under the + convention
                   {{}, {t(1, 5)}, {t(1, 1), t(0, 3)}}};
  LoweringOptions pos;
  pos.c_sign = CSign::Pos;
  ConstraintSystem s = lower_r1cs(f, {}, pos);
  ASSERT_EQ(s.constraints().size(), 2u);
  EXPECT_TRUE(s.constraints()[0].is_zero());
  VarId w1 = *s.find("w1");
  EXPECT_EQ(s.constraints()[1], s.var(w1) + s.constant(3));
  ConstraintSystem neg = lower_r1cs(f, {});
  EXPECT_EQ(neg.constraints()[1], -(s.var(w1) + s.constant(3)));
}

TEST(Lowering, OutputFilter) {
  LoweringOptions opts;
  opts.output_names = std::vector<std::string>{"out1"};
  ConstraintSystem s = lower_r1cs(ts::decoder_r1cs(), parse_sym(ts::kDecoderSym), opts);
  ASSERT_EQ(s.outputs().size(), 1u);
  EXPECT_EQ(s.name(s.outputs()[0]), "main.out1");
  opts.output_names = std::vector<std::string>{"nope"};
  EXPECT_THROW(lower_r1cs(ts::decoder_r1cs(), parse_sym(ts::kDecoderSym), opts), UsageError);
}

TEST(LoweringProperty, PreservesSatisfiability) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 60; ++i) {
    R1csFile f;
    f.prime = Prime(rng() % 2 ? 7ul : 13ul);
    f.field_size_bytes = 8;
    f.n_wires = 1 + static_cast<std::uint32_t>(rng() % 3);
    f.n_pub_out = f.n_wires > 1 ? 1 : 0;
    const std::uint64_t q = f.prime.small_value();
    for (int c = 0; c < 2; ++c) {
      R1csConstraint row;
      for (auto* lc : {&row.a, &row.b, &row.c}) {
        for (std::uint32_t w = 0; w < f.n_wires; ++w) {
          if (rng() % 2) lc->push_back({w, FieldElement(f.prime, static_cast<long>(1 + rng() % (q - 1)))});
        }
      }
      f.constraints.push_back(row);
    }
    ConstraintSystem s = lower_r1cs(f, {});
    std::vector<std::uint32_t> wires;
    for (std::uint32_t w = 1; w < f.n_wires; ++w) wires.push_back(w);
    ts::for_each_assignment(wires, q, [&](const auto& at) {
      auto val = [&](const LinearCombination& lc) {
        std::uint64_t acc = 0;
        for (const auto& t : lc) acc = (acc + t.coeff.value().get_ui() * (t.wire == 0 ? 1 : at.at(t.wire))) % q;
        return acc;
      };
      bool raw = true;
      for (const auto& row : f.constraints) raw &= (val(row.a) * val(row.b) + q - val(row.c)) % q == 0;
      Binding b;
      for (std::uint32_t w : wires) {
        if (auto v = s.find("w" + std::to_string(w))) b.emplace(v->index, FieldElement(f.prime, static_cast<long>(at.at(w))));
      }
      bool lowered = true;
      for (const auto& poly : s.constraints()) {
        Binding used;
        for (VarId v : poly.variables()) used.emplace(v.index, b.at(v.index));
        lowered &= poly.evaluate(used).is_zero();
      }
      EXPECT_EQ(raw, lowered);
    });
  }
}

TEST(PolyIR, Examples) {
  ConstraintSystem s = parse_polyir("prime 7; input x; output y; eq y - x*x;");
  EXPECT_EQ(s.constraints().size(), 1u);
  EXPECT_EQ(s.known().size(), 1u);
  EXPECT_EQ(s.outputs().size(), 1u);
  EXPECT_EQ(s.prime().small_value(), 7u);

  ConstraintSystem cube = parse_polyir("output y; temp x; eq y - x^3;");
  EXPECT_EQ(cube.constraints().size(), 2u);

  EXPECT_THROW(parse_polyir("input x; input x;"), FormatError);
  EXPECT_THROW(parse_polyir("output y; eq y - z;"), FormatError);
  EXPECT_THROW(parse_polyir("prime 8; output y;"), FormatError);
  EXPECT_THROW(parse_polyir("output y eq y;"), FormatError);
  EXPECT_EQ(parse_polyir("output y; eq y = 3;").constraints()[0], parse_polyir("output y; eq y - 3;").constraints()[0]);
}

TEST(PolyIR, DefaultPrimeOverride) {
  EXPECT_EQ(parse_polyir("output y; eq y;").prime(), Prime::bn254());
  EXPECT_EQ(parse_polyir("output y; eq y;", Prime(11ul)).prime().small_value(), 11u);
  EXPECT_EQ(parse_polyir("prime 7; output y; eq y;", Prime(11ul)).prime().small_value(), 7u);
}

TEST(PolyIRProperty, PrintParseRoundTrip) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    ConstraintSystem s = ts::random_system(rng, 13, static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3),
                                           1 + static_cast<int>(rng() % 4), static_cast<ts::Shape>(rng() % 3));
    std::string text = print_polyir(s);
    ConstraintSystem back = parse_polyir(text);
    EXPECT_EQ(back.constraints(), s.constraints()) << text;
    EXPECT_EQ(print_polyir(back), text);
  }
}
