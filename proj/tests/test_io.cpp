#include <gtest/gtest.h>

#include <sstream>

#include "funspace/error.hpp"
#include "funspace/io.hpp"

using namespace funspace;

TEST(Io, ParamRoundTrip) {
  for (const char* s : {"1/2", "3", "inf", "-7/4"}) {
    const auto p = Param::parse(s);
    const auto back = io::param_from_json(io::to_json(p));
    EXPECT_EQ(back.value(), p.value()) << s;
    EXPECT_EQ(back.is_exact(), p.is_exact());
  }
  EXPECT_EQ(io::to_json(Param::exact(1, 2)), "1/2");
  EXPECT_EQ(io::to_json(Param::infinity()), "inf");
}

TEST(Io, FunctionRoundTrip) {
  const SampledFunction f(Box({0, -1}, {1, 1}), {2, 3}, {1, 2, 3, 4, 5, 6});
  const auto g = io::function_from_json(io::to_json(f));
  EXPECT_TRUE(f.same_grid(g));
  EXPECT_EQ(f.values(), g.values());
  EXPECT_THROW(io::function_from_json(io::json::parse(R"({"box":{"lower":[0],"upper":[1]},"cells":[2],"values":[1]})")),
               Error);
}

TEST(Io, WeightAndFamily) {
  const Weight w = PowerLogWeight(2.0, Param::exact(1, 3), Param::exact(-1), 1.0);
  const auto back = io::weight_from_json(io::to_json(w), 1.0);
  EXPECT_DOUBLE_EQ(weight_value(back, 0.3), weight_value(w, 0.3));
  const Weight tab = TabulatedWeight({0.25, 0.5}, {2, 1}, 1.0);
  EXPECT_TRUE(is_tabulated(io::weight_from_json(io::to_json(tab), 1.0)));

  FamilySpec fs;
  fs.kind = FamilyKind::TranslatedBump;
  fs.params = {{"count", 3}};
  const auto fb = io::family_spec_from_json(io::to_json(fs));
  EXPECT_EQ(fb.kind, fs.kind);
  EXPECT_EQ(fb.get("count", 0), 3);
  EXPECT_THROW(io::family_spec_from_json(io::json::parse(R"({"kind":"nope","params":{}})")), Error);
}

TEST(Io, NonFiniteNumbers) {
  EXPECT_EQ(io::number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_TRUE(std::isnan(io::to_double(io::number(std::nan("")))));
  EXPECT_EQ(io::to_double(io::json(1.5)), 1.5);
}

TEST(Io, DeterministicDump) {
  io::json j = {{"b", 1}, {"a", {1.0, 2.5}}};
  std::ostringstream a, b;
  io::write_json(a, j);
  io::write_json(b, j);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().back(), '\n');
}

TEST(Io, Csv) {
  std::ostringstream os;
  io::write_csv(os, {"t", "v"}, {{0.5}, {1.0 / 3.0}});
  EXPECT_EQ(os.str(), "t,v\n0.5,0.33333333333333331\n");
}
