#include <pebble/certificate.hpp>

#include <doctest.h>
#include <json.hpp>

#include <fstream>

using namespace pebble;

namespace {
    auto fixture(const std::string & file) -> std::vector<Certificate>
    {
        return load_certificate_file(PEBBLE_CERTS_DIR "/" + file);
    }

    /// Verified against an open claim so the proven bound is visible.
    auto unclaimed(const Graph & g, Certificate cert) -> VerifiedBound
    {
        cert.claimed_bound.reset();
        return verify_certificate(g, cert);
    }
}

TEST_CASE("random graph fixtures verify at their claims")
{
    std::ifstream in(PEBBLE_CERTS_DIR "/manifest.json");
    auto manifest = nlohmann::json::parse(in);
    int checked = 0;
    for (auto & entry : manifest["fixtures"]) {
        auto graph = entry["graph"].get<std::string>();
        if (graph != "r15" && graph != "r20")
            continue;
        auto file = entry["file"].get<std::string>();
        CAPTURE(file);
        auto g = gen::from_spec(graph);
        auto certs = fixture(file);
        auto root = g.index_of(entry["root"].get<std::string>());
        Integer bound = certs.size() == 1 ? verify_certificate(g, certs.front()).bound : verify_case_analysis(g, root, certs).bound;
        CHECK(bound == entry["claim"].get<long>());
        CHECK(certificate_root(g, certs.front()) == root);
        CHECK(entry["verifies"].get<bool>());
        ++checked;
    }
    CHECK(checked == 35);
}

TEST_CASE("restored and checksum-mismatched tables")
{
    auto g = gen::r20();
    auto v5 = fixture("r20_v5.txt").front();
    auto restored = verify_certificate(g, v5);
    CHECK(restored.bound == 20);
    CHECK(restored.notes.empty());
    v5.rows.pop_back();
    CHECK(unclaimed(g, v5).bound == 21);

    auto v8 = verify_certificate(g, fixture("r20_v8.txt").front());
    CHECK(v8.bound == 20);
    CHECK_FALSE(v8.notes.empty());
}

TEST_CASE("Lemke square tables")
{
    auto g = gen::from_spec("lemke2");
    CHECK_THROWS_AS(verify_certificate(g, fixture("ll_v1v1.txt").front()), InvalidStrategy);

    auto v8 = fixture("ll_v8v8.txt").front();
    CHECK_THROWS_AS(verify_certificate(g, v8), VerificationFailure);
    auto eight = unclaimed(g, v8);
    CHECK(eight.total == 776);
    CHECK(eight.min_column == 8);
    CHECK(eight.bound == 98);

    auto four = unclaimed(g, fixture("ll_v4v4.txt").front());
    CHECK(four.total == 672);
    CHECK(four.min_column == 8);
    CHECK(four.bound == 85);
}
