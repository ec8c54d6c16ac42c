#include <gtest/gtest.h>

#include "nilspec/catalog.hpp"
#include "nilspec/errors.hpp"
#include "nilspec/output.hpp"

using namespace nilspec;

namespace {

OutputTable table_for(const CatalogEntry& e, const PageSelection& sel) {
  const SpectralTable t = full_table(build_complex(e.algebra()));
  return make_output(t, sel, e.id, e.label, e.salamon);
}

}  // namespace

TEST(PageSelection, Parses) {
  EXPECT_EQ(PageSelection::parse("default").mode, PageSelection::Mode::UpToDegeneration);
  EXPECT_EQ(PageSelection::parse("limit").mode, PageSelection::Mode::LimitOnly);
  EXPECT_EQ(PageSelection::parse("all").mode, PageSelection::Mode::All);
  const PageSelection l = PageSelection::parse("0,1,3");
  EXPECT_EQ(l.mode, PageSelection::Mode::List);
  EXPECT_EQ(l.pages, (std::vector<int>{0, 1, 3}));
  EXPECT_THROW(PageSelection::parse("1,x"), Error);
  EXPECT_THROW(PageSelection::parse("-1"), Error);
}

TEST(Format, Parses) {
  EXPECT_EQ(parse_format("json"), Format::Json);
  EXPECT_EQ(parse_format("latex"), Format::Latex);
  EXPECT_THROW(parse_format("xml"), Error);
}

TEST(MakeOutput, SelectsPages) {
  const CatalogEntry& e = Catalog::builtin().find("dim6-1");
  const OutputTable def = table_for(e, PageSelection::parse("default"));
  EXPECT_EQ(def.pages.size(), 4U);
  EXPECT_TRUE(def.limit.has_value());
  const OutputTable lim = table_for(e, PageSelection::parse("limit"));
  EXPECT_TRUE(lim.pages.empty());
  ASSERT_TRUE(lim.limit.has_value());
  // Pages past the stored ones are the limit.
  const OutputTable far = table_for(e, PageSelection::parse("7"));
  EXPECT_EQ(far.pages.at(7), *lim.limit);
}

TEST(Json, RoundTripOnCatalog) {
  for (const CatalogEntry* entry : Catalog::builtin().list(5)) {
    const CatalogEntry& e = *entry;
    const OutputTable t = table_for(e, PageSelection::parse("all"));
    const auto j = to_json(t);
    EXPECT_EQ(j["id"], e.id);
    EXPECT_EQ(j["m"], e.dim());
    EXPECT_EQ(output_from_json(nlohmann::json::parse(j.dump())), t) << e.id;
  }
  EXPECT_THROW(output_from_json(nlohmann::json::parse(R"({"id":"x"})")), Error);
}

TEST(Json, HeisenbergLayout) {
  const OutputTable t = table_for(Catalog::builtin().find("dim3-h3"), PageSelection::parse("default"));
  const auto j = to_json(t);
  EXPECT_EQ(j["r0"], 2);
  EXPECT_EQ(j["betti"], nlohmann::json::parse("[1,2,2,1]"));
  EXPECT_EQ(j["limit"], nlohmann::json::parse("[[1,2,0,0],[0,0,2,1]]"));
  EXPECT_EQ(j["pages"]["0"], nlohmann::json::parse("[[1,2,1,0],[0,1,2,1]]"));
}

TEST(Latex, ReproducesStoredTables) {
  for (const CatalogEntry& e : Catalog::builtin().entries()) {
    PageSelection sel;
    sel.mode = PageSelection::Mode::List;
    for (const auto& [r, g] : e.golden_pages) sel.pages.push_back(r);
    const OutputTable t = table_for(e, sel);
    const auto blocks = parse_latex_tables(render(t, Format::Latex));
    ASSERT_GE(blocks.size(), e.golden_pages.size()) << e.id;
    std::size_t i = 0;
    for (const auto& [r, g] : e.golden_pages) {
      EXPECT_TRUE(blocks[i].first.starts_with("E_{" + std::to_string(r) + "}")) << e.id << ": " << blocks[i].first;
      // Suspect cells differ from the printed tables by design.
      bool has_suspect = false;
      for (const auto& s : e.suspects) has_suspect |= s.page == r;
      if (!has_suspect) {
        EXPECT_EQ(blocks[i].second, g) << e.id << " page " << r;
      }
      ++i;
    }
  }
}

TEST(Text, FoldsLimitIntoDegenerationPage) {
  const OutputTable t = table_for(Catalog::builtin().find("dim3-h3"), PageSelection::parse("default"));
  const std::string out = render(t, Format::Text);
  EXPECT_NE(out.find("E_2 = E_inf"), std::string::npos) << out;
  EXPECT_NE(out.find("betti: 1 2 2 1"), std::string::npos) << out;
}

TEST(Csv, LongForm) {
  const OutputTable t = table_for(Catalog::builtin().find("dim3-h3"), PageSelection::parse("limit"));
  const std::string out = render(t, Format::Csv);
  EXPECT_TRUE(out.starts_with("page,p,q,dim\n")) << out;
  EXPECT_NE(out.find("inf,1,0,2\n"), std::string::npos) << out;
  EXPECT_NE(out.find("inf,0,3,1\n"), std::string::npos) << out;
}
