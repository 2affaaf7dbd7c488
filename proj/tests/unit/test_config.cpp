#include <gtest/gtest.h>

#include "coordyn/config.hpp"
#include "coordyn/error.hpp"
#include "oracles.hpp"

namespace coordyn {
namespace {

TEST(Config, JsonRoundTrip) {
  PipelineConfig c;
  c.input = "events.csv";
  c.format = EventFormat::csv;
  c.span = TimeSpan{1573516800, 1573516800 + 31 * kSecondsPerDay};
  c.alpha = 0.1;
  c.seed = 1234567890123ULL;
  c.polarity_seeds = {{"left", -1}, {"right", 1}};
  c.threads = 3;
  nlohmann::json j = c;
  EXPECT_EQ(j.at("format"), "csv");
  const auto back = j.get<PipelineConfig>();
  EXPECT_EQ(nlohmann::json(back), j);
  EXPECT_EQ(back.span->end, c.span->end);
}

TEST(Config, MissingKeysKeepDefaults) {
  const auto c = nlohmann::json({{"gamma", 1.5}}).get<PipelineConfig>();
  EXPECT_EQ(c.gamma, 1.5);
  EXPECT_EQ(c.window_days, 7);
  EXPECT_EQ(c.offset_days, 1);
  EXPECT_FALSE(c.span);
}

TEST(Config, UnknownKeyRejected) {
  try {
    (void)nlohmann::json({{"gama", 1.5}}).get<PipelineConfig>();
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("gama"), std::string::npos);
  }
}

TEST(Config, DateOnlySpanEndIsInclusive) {
  const auto c = nlohmann::json({{"span", {{"start", "2019-11-12"}, {"end", "2019-12-12"}}}}).get<PipelineConfig>();
  ASSERT_TRUE(c.span);
  EXPECT_EQ(c.span->length(), 31 * kSecondsPerDay);
}

TEST(Config, ValidationNamesField) {
  auto expect_invalid = [](auto mutate, const std::string& field) {
    PipelineConfig c;
    mutate(c);
    try {
      validate(c);
      ADD_FAILURE() << field;
    } catch (const InputError& e) {
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
  };
  expect_invalid([](PipelineConfig& c) { c.alpha = 1.0; }, "alpha");
  expect_invalid([](PipelineConfig& c) { c.window_days = 0; }, "window_days");
  expect_invalid([](PipelineConfig& c) { c.top_fraction = 0.0; }, "top_fraction");
  expect_invalid([](PipelineConfig& c) { c.omega = -1.0; }, "omega");
  expect_invalid([](PipelineConfig& c) { c.rbo_persistence = 1.0; }, "rbo_persistence");
  expect_invalid([](PipelineConfig& c) { c.threads = 0; }, "threads");
  expect_invalid([](PipelineConfig& c) { c.polarity_seeds = {{"x", 3}}; }, "polarity_seeds");
}

TEST(Config, FilesAndSeeds) {
  oracle::TempDir dir("config");
  PipelineConfig c;
  c.gamma = 0.75;
  save_config(c, dir.file("config.json"));
  EXPECT_EQ(load_config(dir.file("config.json")).gamma, 0.75);
  EXPECT_THROW(load_config(dir.file("absent.json")), InputError);
  oracle::write_file(dir.file("broken.json"), "{");
  EXPECT_THROW(load_config(dir.file("broken.json")), InputError);

  oracle::write_file(dir.file("plain.json"), R"({"a": -1, "b": 1})");
  EXPECT_EQ(load_seeds(dir.file("plain.json")), (std::map<std::string, int>{{"a", -1}, {"b", 1}}));
  oracle::write_file(dir.file("nested.json"), R"({"events": 10, "seeds": {"a": -1}})");
  EXPECT_EQ(load_seeds(dir.file("nested.json")), (std::map<std::string, int>{{"a", -1}}));
  oracle::write_file(dir.file("bad.json"), R"({"a": "left"})");
  EXPECT_THROW(load_seeds(dir.file("bad.json")), InputError);
}

}  // namespace
}  // namespace coordyn
