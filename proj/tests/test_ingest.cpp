#include <doctest.h>

#include <filesystem>

#include "generators.hpp"
#include "slk/error.hpp"
#include "slk/ingest.hpp"
#include "slk/oracle.hpp"
#include "slk/text.hpp"

using namespace slk;

namespace {

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

std::vector<ExperimentRecord> seven_languages() {
  std::vector<ExperimentRecord> all;
  Rng rng(17);
  const auto grid = paper_grid(GridUnit::raw);
  for (const auto& lang : gen::languages(7)) {
    const PowerLawParams p(rng.uniform(1, 50), rng.uniform(1, 50), rng.uniform(0.1, 0.4),
                           rng.uniform(0.1, 0.4), rng.uniform(0.2, 0.8));
    auto recs = generate_surface(p, grid, {NoiseKind::lognormal, 0.01, 3}, Tag::language(lang), "run");
    all.insert(all.end(), recs.begin(), recs.end());
  }
  return all;
}

}  // namespace

TEST_CASE("minimal csv") {
  const auto ds = parse_dataset("run_id,language,n_params,d_tokens,val_loss\nr1,python,1.1e9,16e9,0.81\n",
                                DataFormat::csv);
  REQUIRE(ds.size() == 1);
  const auto& r = ds.records()[0];
  CHECK(r.run_id() == "r1");
  CHECK(r.tag().key() == "python");
  CHECK(r.n_params() == 1.1e9);
  CHECK(r.d_tokens() == 16e9);
  CHECK(r.val_loss() == 0.81);
  CHECK(r.weight() == 1.0);
}

TEST_CASE("row errors name the row") {
  const std::string bad = "run_id,language,n_params,d_tokens,val_loss\nr1,python,1e9,1e9,-0.2\n";
  CHECK_THROWS_AS(parse_dataset(bad, DataFormat::csv), ValidationError);
  CHECK(message_of([&] { parse_dataset(bad, DataFormat::csv); }).find("row 1") != std::string::npos);

  CHECK_THROWS_AS(parse_dataset("run_id,language,n_params,d_tokens\nr1,python,1,1\n", DataFormat::csv),
                  SchemaError);
  CHECK_THROWS_AS(parse_dataset("run_id,language,n_params,d_tokens,val_loss\nr1,cobol,1,1,1\n",
                                DataFormat::csv),
                  ValidationError);
  CHECK_THROWS_AS(parse_dataset("run_id,language,n_params,d_tokens,val_loss\nr1,python,1,1,1\n"
                                "r1,java,1,1,1\n",
                                DataFormat::csv),
                  ConflictError);
  CHECK_THROWS_AS(parse_dataset("run_id,language,n_params,d_tokens,val_loss\nr1,python,1,1,1,1\n",
                                DataFormat::csv),
                  SchemaError);
  CHECK_THROWS_AS(parse_dataset("run_id,language,n_params,d_tokens,val_loss\nr1,python,1,abc,1\n",
                                DataFormat::csv),
                  ValidationError);
  CHECK_THROWS_AS(parse_dataset("run_id,language,n_params,d_tokens,val_loss\nr1,python,1,\"1,5\",1\n",
                                DataFormat::csv),
                  ValidationError);
}

TEST_CASE("aliases, directions, weights and unknown columns") {
  const auto ds = parse_dataset(
      "run_id,direction_src,direction_dst,n_params,d_tokens,val_loss,weight,gpu\n"
      "a,py,C#,1e8,2e9,1.5,0.5,h100\n",
      DataFormat::csv);
  REQUIRE(ds.size() == 1);
  CHECK(ds.records()[0].tag().key() == "python_csharp");
  CHECK(ds.records()[0].weight() == 0.5);
  REQUIRE(ds.warnings().size() == 1);
  CHECK(ds.warnings()[0].find("gpu") != std::string::npos);
}

TEST_CASE("jsonl") {
  const auto ds = parse_dataset(
      "{\"run_id\":\"a\",\"language\":\"go\",\"n_params\":1e8,\"d_tokens\":2e9,\"val_loss\":0.9}\n"
      "\n"
      "{\"run_id\":\"b\",\"language\":\"rust\",\"n_params\":2e8,\"d_tokens\":4e9,\"val_loss\":0.7}\n",
      DataFormat::jsonl);
  CHECK(ds.size() == 2);
  CHECK_THROWS_AS(parse_dataset("{\"run_id\":\"a\",\"language\":\"go\",\"n_params\":\"1e8\","
                                "\"d_tokens\":2e9,\"val_loss\":0.9}\n",
                                DataFormat::jsonl),
                  ValidationError);
  CHECK_THROWS_AS(parse_dataset("{not json}\n", DataFormat::jsonl), SchemaError);
}

TEST_CASE("grouping") {
  const Dataset ds(seven_languages(), LanguageRegistry::paper_default());
  CHECK(ds.size() == 420);
  const auto groups = group_by_tag(ds);
  CHECK(groups.size() == 7);
  for (const auto& [key, recs] : groups) CHECK(recs.size() == 60);

  CHECK(group_by_tag(Dataset({}, LanguageRegistry::paper_default())).empty());
  const Dataset one({ExperimentRecord("x", Tag::direction("python", "java"), 1, 1, 1)},
                    LanguageRegistry::paper_default());
  CHECK(group_by_tag(one).size() == 1);
}

TEST_CASE("property: write then load round-trips field for field") {
  const auto recs = seven_languages();
  const Dataset ds(recs, LanguageRegistry::paper_default());
  const auto dir = std::filesystem::temp_directory_path() / "slk_ingest_test";
  std::filesystem::create_directories(dir);
  for (const auto fmt : {DataFormat::csv, DataFormat::jsonl}) {
    const auto path = (dir / ("data." + to_string(fmt))).string();
    write_dataset(ds, path, fmt);
    const auto back = load_dataset(path, fmt);
    CHECK(back.records() == recs);
    CHECK(back.provenance().row_count == 420);
    CHECK(back.provenance().content_hash == hex64(fnv1a64(read_file(path))));
    const auto again = load_dataset(path, fmt);
    CHECK(again.records() == back.records());
    CHECK(serialize_records(back.records(), fmt) == read_file(path));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("paired runs") {
  const auto ok = parse_paired_runs(
      "target,auxiliary,mixed_loss,baseline_loss\njava,csharp,0.718,0.903\npython,python,0.75,0.75\n",
      DataFormat::csv);
  REQUIRE(ok.size() == 2);
  CHECK(ok[0].target == "java");
  CHECK(ok[0].auxiliary == "csharp");
  CHECK(*ok[0].baseline_loss == 0.903);
  CHECK_THROWS_AS(parse_paired_runs("target,auxiliary,mixed_loss,baseline_loss\ngo,rust,0.42,0\n",
                                    DataFormat::csv),
                  ValidationError);
  const auto blank = parse_paired_runs(
      "target,auxiliary,mixed_loss,baseline_loss\njava,go,0.8,\n", DataFormat::csv);
  CHECK(!blank[0].baseline_loss);
  CHECK(parse_paired_runs(serialize_paired_runs(ok), DataFormat::csv).size() == 2);
}

TEST_CASE("text helpers") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e9) == "1e+09");
  CHECK(*parse_double("1.1e9") == 1.1e9);
  CHECK(!parse_double("1,5"));
  CHECK(!parse_double("1.0x"));
  CHECK(split_csv_line("a,\"b,c\",\"d\"\"e\"") == std::vector<std::string>{"a", "b,c", "d\"e"});
  CHECK(csv_escape("b,c") == "\"b,c\"");
  CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
  CHECK(format_from_path("x.jsonl") == DataFormat::jsonl);
  CHECK(format_from_path("x.CSV") == DataFormat::csv);
}
