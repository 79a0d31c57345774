#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "dfrm/standard.hpp"
#include "dfrm/text.hpp"

using namespace dfrm;

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("parse a frame declaration") {
    Document doc = parse("frame two\n  elem 0\n  elem 1\n  leq 0 1\n");
    const FramePtr* f = doc.find_as<FramePtr>("two");
    REQUIRE(f);
    CHECK(**f == *make_frame2());
}

TEST_CASE("parse errors carry locations") {
    // unknown kind
    try {
        parse("gadget g\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
    // duplicate name
    CHECK_THROWS_WITH(parse("frame a\n  elem x\nframe a\n  elem y\n"),
                      Catch::Matchers::ContainsSubstring("duplicate name"));
    // dangling reference
    CHECK_THROWS_WITH(parse("dframe d\n  plus nowhere\n  minus nowhere\n"),
                      Catch::Matchers::ContainsSubstring("undeclared"));
    // forward references are rejected: declaration order matters
    CHECK_THROWS_AS(parse("dframe d\n  plus f\n  minus f\nframe f\n  elem x\n"), ParseError);
    // syntax error in a body line
    CHECK_THROWS_AS(parse("frame f\n  elem\n"), ParseError);
}

TEST_CASE("antisymmetry violations surface at the declaration") {
    try {
        parse("frame loop\n  elem 0\n  elem 1\n  leq 0 1\n  leq 1 0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("antisymmetry"));
    }
}

TEST_CASE("missing meets are a load failure") {
    // two incomparable maximal elements: no top, no meet table
    CHECK_THROWS_AS(parse("semilattice v\n  elem a\n  elem b\n"), ParseError);
}

TEST_CASE("fixture files parse and round-trip") {
    for (const char* name :
         {"frames.dfrm", "sier.dfrm", "free2.dfrm", "two_d.dfrm", "n5.dfrm"}) {
        INFO(name);
        Document doc = parse(read_fixture(name));
        std::string canonical = serialize(doc);
        Document again = parse(canonical);
        // serialize . parse is the identity on canonical documents
        CHECK(serialize(again) == canonical);
        REQUIRE(again.entries.size() == doc.entries.size());
        for (std::size_t i = 0; i < doc.entries.size(); ++i)
            CHECK(doc.entries[i].name == again.entries[i].name);
    }
}

TEST_CASE("parse-serialize is the identity on in-memory values") {
    Document doc = parse(read_fixture("sier.dfrm"));
    Document again = parse(serialize(doc));
    const DFrameDecl* d1 = doc.find_as<DFrameDecl>("sier");
    const DFrameDecl* d2 = again.find_as<DFrameDecl>("sier");
    REQUIRE(d1);
    REQUIRE(d2);
    CHECK(d1->dframe == d2->dframe);
    const PreDFrameDecl* p1 = doc.find_as<PreDFrameDecl>("sier_pres");
    const PreDFrameDecl* p2 = again.find_as<PreDFrameDecl>("sier_pres");
    REQUIRE(p1);
    REQUIRE(p2);
    CHECK(p1->pres.con1 == p2->pres.con1);
    CHECK(p1->pres.tot1 == p2->pres.tot1);
    CHECK(p1->pres.plus.covers == p2->pres.plus.covers);
}

TEST_CASE("the parsed Sierpinski artifacts agree with the built ones") {
    Document doc = parse(read_fixture("sier.dfrm"));
    const FinBispace* x = doc.find_as<FinBispace>("sier_space");
    REQUIRE(x);
    DFrame from_space = omega_d(*x);
    const DFrameDecl* d = doc.find_as<DFrameDecl>("sier");
    REQUIRE(d);
    CHECK(from_space.con.members == d->dframe.con.members);
    CHECK(from_space.tot.members == d->dframe.tot.members);
    DFrame built = make_sier();
    CHECK(built.con.members == d->dframe.con.members);
}

TEST_CASE("nullary covers parse") {
    Document doc = parse(
        "semilattice s\n  elem x\npresentation p\n  base s\n  cover x <=\n");
    const PresentationDecl* p = doc.find_as<PresentationDecl>("p");
    REQUIRE(p);
    REQUIRE(p->pres.covers.size() == 1);
    CHECK(p->pres.covers[0].coverers.empty());
}

TEST_CASE("comments and blank lines are ignored") {
    Document doc = parse("# heading\n\nframe two # trailing\n  elem 0\n  # note\n  elem 1\n  leq 0 1\n");
    CHECK(doc.find_as<FramePtr>("two"));
}
