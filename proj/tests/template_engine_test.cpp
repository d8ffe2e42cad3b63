#include <filesystem>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "riscgen/parity.hpp"
#include "riscgen/templates.hpp"

using namespace riscgen;
namespace fs = std::filesystem;

namespace {

const fs::path kTemplates = fs::path(RISCGEN_DATA_DIR) / "templates";

const Presets& presets() {
  static const Presets p = load_presets(fs::path(RISCGEN_DATA_DIR) / "presets");
  return p;
}

std::shared_ptr<const ColumnSchema> schema() {
  static const auto s = std::make_shared<const ColumnSchema>(ColumnSchema::contract_default());
  return s;
}

const TemplateSet& stub(Language lang) {
  static const TemplateSet fr = load_template_set(kTemplates, Language::Fr);
  static const TemplateSet en = load_template_set(kTemplates, Language::En);
  return lang == Language::Fr ? fr : en;
}

ContractRecord record_with(const std::vector<std::string>& columns, std::uint64_t seed = 7) {
  return sample_record(DistributionConfig{}, presets(), ProtectionSet::from_names(schema(), columns),
                       make_date(2023, 6, 15), seed);
}

ContractRecord fixed_record() {
  auto r = record_with({"SectionA", "SectionB2", "QEF_20a"});
  r.contract.start_date = make_date(2023, 6, 1);
  r.contract.end_date = add_one_year(r.contract.start_date);
  r.financials.liability_limit = Cents{100'000'000};
  return r;
}

/// A scratch template directory that is removed on destruction.
struct ScratchDir {
  fs::path root;
  explicit ScratchDir(const std::string& tag) {
    root = fs::temp_directory_path() / ("riscgen_tpl_" + tag + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
    fs::remove_all(root);
    fs::create_directories(root / "en");
  }
  ~ScratchDir() { fs::remove_all(root); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(root / "en" / name) << text; }
  void minimal_manifest(const std::string& extra_entries = "") const {
    write("a.txt", "Intro for <Insured Name>.");
    write("b.txt", "FROM: <Contract Start Date>* TO: <Contract End Date>*");
    write("c.txt", "Policy text.");
    write("manifest.json", R"({"templates": [
      {"id": "a", "file": "a.txt", "part": "introductory"},
      {"id": "b", "file": "b.txt", "part": "declaration"},
      {"id": "c", "file": "c.txt", "part": "qpf"})" + extra_entries + "]}");
  }
};

std::size_t count_of(const std::string& s, char c) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), c)); }

}  // namespace

TEST(TemplateSet, StubInventoryLoadsInBothLanguages) {
  for (auto lang : {Language::Fr, Language::En}) {
    const auto& set = stub(lang);
    EXPECT_EQ(set.language(), lang);
    for (auto p : {TemplatePart::Introductory, TemplatePart::Declaration, TemplatePart::Qpf, TemplatePart::Endorsement}) {
      EXPECT_FALSE(set.part(p).empty()) << to_string(p);
    }
    EXPECT_EQ(set.manifest_checksum().size(), 64u);
    for (const auto& id : default_endorsement_ids()) EXPECT_EQ(set.endorsement(id).size(), 1u) << id;
  }
}

TEST(TemplateSet, EveryCataloguedPlaceholderIsUsed) {
  for (auto lang : {Language::Fr, Language::En}) {
    std::set<std::string> used;
    for (const auto& t : stub(lang).templates()) {
      for (const auto& p : t.placeholders()) used.insert(p);
    }
    for (const auto& spec : placeholder_catalogue()) EXPECT_TRUE(used.contains(std::string(spec.name))) << spec.name;
  }
}

TEST(TemplateSet, UnknownPlaceholderNamesTemplateAndPlaceholder) {
  ScratchDir dir("unknown");
  dir.minimal_manifest();
  dir.write("c.txt", "Value: <Nonexistent Field>");
  try {
    load_template_set(dir.root, Language::En);
    FAIL() << "expected UnknownPlaceholder";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownPlaceholder);
    EXPECT_NE(std::string(e.what()).find("'c'"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("Nonexistent Field"), std::string::npos);
  }
}

TEST(TemplateSet, LoadErrors) {
  ScratchDir dir("errors");
  try {
    load_template_set(dir.root, Language::En);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingManifest);
  }

  dir.minimal_manifest(R"(, {"id": "a", "file": "c.txt", "part": "qpf"})");
  try {
    load_template_set(dir.root, Language::En);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateTemplateId);
  }

  dir.minimal_manifest(R"(, {"id": "late", "file": "a.txt", "part": "introductory"})");
  EXPECT_THROW(load_template_set(dir.root, Language::En), Error);

  dir.minimal_manifest(R"(, {"id": "e", "file": "c.txt", "part": "endorsement", "endorsement_id": "999"})");
  try {
    load_template_set(dir.root, Language::En);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }

  dir.minimal_manifest(R"(, {"id": "e", "file": "c.txt", "part": "endorsement"})");
  EXPECT_THROW(load_template_set(dir.root, Language::En), Error);
}

TEST(TemplateSet, ManifestCountsAreChecked) {
  ScratchDir dir("counts");
  dir.minimal_manifest();
  auto manifest = nlohmann::json::parse(std::ifstream(dir.root / "en" / "manifest.json"));
  manifest["counts"] = {{"base", 3}, {"endorsement", 0}};
  std::ofstream(dir.root / "en" / "manifest.json") << manifest.dump();
  EXPECT_NO_THROW(load_template_set(dir.root, Language::En));
  manifest["counts"]["base"] = 29;
  std::ofstream(dir.root / "en" / "manifest.json") << manifest.dump();
  EXPECT_THROW(load_template_set(dir.root, Language::En), Error);
}

TEST(TemplateSet, RepeatPadsBody) {
  ScratchDir dir("repeat");
  dir.minimal_manifest();
  auto manifest = nlohmann::json::parse(std::ifstream(dir.root / "en" / "manifest.json"));
  manifest["templates"][2]["repeat"] = 3;
  std::ofstream(dir.root / "en" / "manifest.json") << manifest.dump();
  const auto set = load_template_set(dir.root, Language::En);
  EXPECT_EQ(set.part(TemplatePart::Qpf).front()->body, "Policy text.\n\nPolicy text.\n\nPolicy text.");
}

TEST(TemplateParse, EscapedAngleBracketIsLiteral) {
  const auto t = Template::make("t", Language::En, TemplatePart::Qpf, std::nullopt, R"(a \<b> <Insured Name>)");
  ASSERT_EQ(t.segments.size(), 2u);
  EXPECT_EQ(t.segments[0], (Segment{false, "a <b> "}));
  EXPECT_EQ(t.segments[1], (Segment{true, "Insured Name"}));
  EXPECT_EQ(fill(t, PlaceholderValues{{"Insured Name", "X"}}), "a <b> X");
  EXPECT_THROW(Template::make("t", Language::En, TemplatePart::Qpf, std::nullopt, "open <Insured Name"), Error);
}

TEST(Fill, ContractPeriodInEnglish) {
  const auto t = Template::make("p", Language::En, TemplatePart::Declaration, std::nullopt,
                                "FROM: <Contract Start Date>* TO: <Contract End Date>*");
  EXPECT_EQ(fill(t, fixed_record()), "FROM: June 1, 2023* TO: June 1, 2024*");
}

TEST(Fill, NoPlaceholdersIsIdentity) {
  const std::string body = "Plain text, with punctuation; and\nnew lines.\f";
  const auto t = Template::make("id", Language::Fr, TemplatePart::Qpf, std::nullopt, body);
  EXPECT_EQ(fill(t, fixed_record()), body);
}

TEST(Fill, MissingValueIsReported) {
  const auto t = Template::make("m", Language::En, TemplatePart::Qpf, std::nullopt, "<Insured Name> <Client ID>");
  try {
    fill(t, PlaceholderValues{{"Insured Name", "A"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingValue);
    EXPECT_NE(std::string(e.what()).find("Client ID"), std::string::npos);
  }
}

// Locale fixture: the same record in both languages.
TEST(Fill, LocaleFormattingFixtures) {
  const auto r = fixed_record();
  const auto en = placeholder_values(r, Language::En);
  const auto fr = placeholder_values(r, Language::Fr);
  EXPECT_EQ(en.at("Contract Start Date"), "June 1, 2023");
  EXPECT_EQ(fr.at("Contract Start Date"), "1 juin 2023");
  EXPECT_EQ(fr.at("Contract End Date"), "1 juin 2024");
  EXPECT_EQ(en.at("Liability Limit"), "$1,000,000");
  EXPECT_EQ(fr.at("Liability Limit"), "1 000 000 $");

  struct Row {
    Date date;
    const char* en;
    const char* fr;
  };
  for (const auto& row : {Row{make_date(2024, 2, 29), "February 29, 2024", "29 février 2024"},
                          Row{make_date(2023, 8, 15), "August 15, 2023", "15 août 2023"},
                          Row{make_date(2022, 12, 31), "December 31, 2022", "31 décembre 2022"}}) {
    EXPECT_EQ(format_date(row.date, Language::En), row.en);
    EXPECT_EQ(format_date(row.date, Language::Fr), row.fr);
    EXPECT_EQ(parse_date_text(row.en, Language::En), row.date);
    EXPECT_EQ(parse_date_text(row.fr, Language::Fr), row.date);
  }
  EXPECT_THROW(parse_date_text("June 31, 2023", Language::En), Error);
  EXPECT_THROW(parse_date_text("1 June 2023", Language::Fr), Error);
}

TEST(Fill, DateTextRoundTripsForEveryDay) {
  for (Date d = make_date(2023, 1, 1); d < make_date(2027, 1, 1); d = add_days(d, 1)) {
    for (auto lang : {Language::Fr, Language::En}) ASSERT_EQ(parse_date_text(format_date(d, lang), lang), d);
  }
}

TEST(Assemble, BaseOnlyHasThreeParts) {
  for (auto lang : {Language::Fr, Language::En}) {
    const auto doc = assemble(record_with({"SectionA"}), stub(lang));
    EXPECT_EQ(count_of(doc, '\f'), 2u);
    for (const auto& id : default_endorsement_ids()) {
      EXPECT_EQ(doc.find(protection_code(endorsement_column(id), lang) + " - "), std::string::npos) << id;
    }
  }
}

TEST(Assemble, EndorsementsAppearSortedById) {
  for (auto lang : {Language::Fr, Language::En}) {
    const auto doc = assemble(record_with({"SectionA", "QEF_27", "QEF_20a"}), stub(lang));
    const auto p20a = doc.find(protection_code("QEF_20a", lang) + " - ");
    const auto p27 = doc.find(protection_code("QEF_27", lang) + " - ");
    ASSERT_NE(p20a, std::string::npos);
    ASSERT_NE(p27, std::string::npos);
    EXPECT_LT(p20a, p27);
    EXPECT_EQ(count_of(doc, '\f'), 4u);
  }
}

// Each template's opening line occurs in the output in manifest order.
TEST(Assemble, ManifestOrderIsPreserved) {
  const std::vector<std::string> all = [] {
    std::vector<std::string> cols = {"SectionA", "SectionB1"};
    for (const auto& id : default_endorsement_ids()) cols.push_back(endorsement_column(id));
    return cols;
  }();
  for (auto lang : {Language::Fr, Language::En}) {
    const auto& set = stub(lang);
    const auto doc = assemble(record_with(all), set);
    std::size_t last = 0;
    std::vector<const Template*> expected;
    for (auto p : {TemplatePart::Introductory, TemplatePart::Declaration, TemplatePart::Qpf}) {
      for (const auto* t : set.part(p)) expected.push_back(t);
    }
    auto ids = default_endorsement_ids();
    std::sort(ids.begin(), ids.end(), endorsement_id_less);
    for (const auto& id : ids) expected.push_back(set.endorsement(id).front());
    for (const auto* t : expected) {
      if (t->segments.front().placeholder) continue;
      const auto first_line = t->segments.front().text.substr(0, t->segments.front().text.find('\n'));
      const auto at = doc.find(first_line, last);
      ASSERT_NE(at, std::string::npos) << t->id;
      last = at + 1;
    }
  }
}

TEST(Assemble, MissingEndorsementTemplate) {
  ScratchDir dir("missing_endorsement");
  dir.minimal_manifest(R"(, {"id": "e27", "file": "c.txt", "part": "endorsement", "endorsement_id": "27"})");
  const auto set = load_template_set(dir.root, Language::En);
  EXPECT_NO_THROW(assemble(record_with({"SectionA", "QEF_27"}), set));
  try {
    assemble(record_with({"SectionA", "QEF_27", "QEF_43"}), set);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingEndorsementTemplate);
  }
}

TEST(Assemble, PureAndFreeOfPlaceholderMarkers) {
  Rng rng = Rng::stream(11, "test.sets");
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> cols;
    for (const auto& name : schema()->names()) {
      if (rng.bernoulli(0.4)) cols.push_back(name);
    }
    const auto r = record_with(cols, static_cast<std::uint64_t>(i));
    for (auto lang : {Language::Fr, Language::En}) {
      const auto doc = assemble(r, stub(lang));
      EXPECT_EQ(doc, assemble(r, stub(lang)));
      for (const auto& spec : placeholder_catalogue()) {
        ASSERT_EQ(doc.find("<" + std::string(spec.name) + ">"), std::string::npos) << spec.name;
      }
      // Endorsement pages are exactly the included endorsement columns.
      std::size_t pages = 0;
      for (const auto& id : default_endorsement_ids()) {
        const bool present = doc.find(protection_code(endorsement_column(id), lang) + " - ") != std::string::npos;
        EXPECT_EQ(present, r.protections.has(endorsement_column(id))) << id;
        pages += present;
      }
      EXPECT_EQ(count_of(doc, '\f'), 2 + pages);
    }
  }
}

TEST(Parity, ExtractionRecoversRenderedValues) {
  Rng rng = Rng::stream(5, "test.parity");
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> cols;
    for (const auto& name : schema()->names()) {
      if (rng.bernoulli(0.3)) cols.push_back(name);
    }
    const auto r = record_with(cols, 1000 + static_cast<std::uint64_t>(i));
    PlaceholderValues canon[2];
    for (auto lang : {Language::Fr, Language::En}) {
      const auto& set = stub(lang);
      const auto doc = assemble(r, set);
      const auto extracted = extract_values(document_layout(set, r.protections), doc);
      EXPECT_EQ(extracted, placeholder_values(r, lang));
      canon[lang == Language::Fr ? 0 : 1] = document_canonical_values(doc, set, r.protections, presets());
    }
    const auto mismatches = compare_parity(canon[0], canon[1]);
    EXPECT_TRUE(mismatches.empty()) << mismatches.front().placeholder << ": " << mismatches.front().fr << " vs "
                                    << mismatches.front().en;
    EXPECT_EQ(canon[0].size(), placeholder_catalogue().size());
  }
}

TEST(Parity, DetectsDivergentValues) {
  const auto r = fixed_record();
  auto other = r;
  other.financials.liability_limit = Cents{200'000'000};
  other.vehicle.financing_institution = std::nullopt;
  const auto fr = canonical_values(placeholder_values(r, Language::Fr), Language::Fr, presets());
  const auto en = canonical_values(placeholder_values(other, Language::En), Language::En, presets());
  std::set<std::string> names;
  for (const auto& m : compare_parity(fr, en)) names.insert(m.placeholder);
  EXPECT_TRUE(names.contains("Liability Limit"));
  EXPECT_TRUE(names.contains("Coverage Summary"));
  EXPECT_EQ(names.contains("Financing Institution"), r.vehicle.financing_institution.has_value());
  EXPECT_FALSE(names.contains("Insured Name"));
}
