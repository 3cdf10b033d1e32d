// Tests for the machine-checkable certificates: verdicts, tree shape,
// membership powers, leaf closure arguments, schema fields, deterministic
// serialization, and bit-exact replay for both variable-order conventions.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "unhinge/certify.hpp"

using namespace unhinge;
using nlohmann::json;

namespace {

const json* find_node(const json& node, const std::string& hyp) {
    if (node.value("hypothesis", "") == hyp) return &node;
    if (node.contains("children"))
        for (const json& ch : node["children"])
            if (const json* hit = find_node(ch, hyp)) return hit;
    return nullptr;
}

void collect_leaves(const json& node, std::vector<const json*>& out) {
    if (node.contains("leaf") && !node["leaf"].is_null())
        out.push_back(&node["leaf"]);
    if (node.contains("children"))
        for (const json& ch : node["children"]) collect_leaves(ch, out);
}

}  // namespace

TEST_CASE("three-body certificate") {
    Certificate c = certify(3);
    CHECK(c.verdict == "UNHINGED");
    CHECK(c.branch_count == 0);
    CHECK(c.leaf_count == 1);
    CHECK(c.all_leaves_closed);
    CHECK(c.all_memberships_ok);
    CHECK(c.memberships.empty());

    json doc = json::parse(c.json_text);
    for (const char* key : {"problem", "variable_order", "monomial_order",
                            "systems", "f_polys", "support", "coefficients",
                            "case_tree", "verdict", "notes"})
        CHECK(doc.contains(key));
    CHECK(!doc.contains("order_convention"));
    CHECK(!doc.contains("generator_subset"));
    CHECK(doc["problem"]["bodies"] == 3);
    CHECK(doc["variable_order"] ==
          json::array({"r12", "r13", "m2", "m3", "x"}));
    CHECK(doc["monomial_order"] == "degrevlex");

    REQUIRE(doc["systems"].size() == 2);
    CHECK(doc["systems"][0]["row"] == "gddot_12");
    CHECK(doc["systems"][1]["row"] == "gddot_13");
    // Both rows are cleared by the one common multiplier.
    CHECK(doc["systems"][0]["multiplier"] == "r12^3*r13^3*x^5");
    CHECK(doc["systems"][1]["multiplier"] == "r12^3*r13^3*x^5");

    const json& leaf = doc["case_tree"]["leaf"];
    CHECK(leaf["kind"] == "x_constrained");
    CHECK(leaf["witness"] ==
          "2*r12^3*r13^3 - 3*r12^5*x + 3*r12^3*r13^2*x + 3*r12^2*r13^3*x - "
          "3*r13^5*x - 5*r12^3*x^3 - 5*r13^3*x^3 + 8*x^6");
    CHECK(leaf["degree_in_x"] == 6);
    CHECK(leaf["leading_x_coefficient"] == "8");
    CHECK(leaf["closed"] == true);
}

TEST_CASE("four-body certificate verdict and tree shape") {
    Certificate c = certify(4);
    CHECK(c.verdict == "UNHINGED");
    CHECK(c.branch_count == 2);
    CHECK(c.leaf_count == 3);
    CHECK(c.all_leaves_closed);
    CHECK(c.all_memberships_ok);

    json doc = json::parse(c.json_text);
    CHECK(doc["problem"]["bodies"] == 4);
    CHECK(doc["order_convention"] == "k13-largest");
    CHECK(doc["variable_order"] ==
          json::array({"k13", "k14", "k23", "k24", "m1", "m2", "m3"}));
    CHECK(doc["support"] == json::array({0, 3, 5, 6, 8, 9}));
    REQUIRE(doc["generator_subset"].size() == 6);
    CHECK(doc["generator_subset"][5] ==
          "k13^3*m3 - k23^3*m3 + k14^3 - k24^3");
    REQUIRE(doc["systems"].size() == 5);
    CHECK(doc["systems"][0]["row"] == "gddot_12");

    const json& root = doc["case_tree"];
    REQUIRE(root["children"].size() == 3);
    CHECK(root["children"][0]["hypothesis"] == "k13 = k23");
    CHECK(root["children"][1]["hypothesis"] == "k24 = 1");
    CHECK(root["children"][2]["hypothesis"] == "x = k13 or x = k23");

    std::vector<const json*> leaves;
    collect_leaves(root, leaves);
    REQUIRE(leaves.size() == 3);
    for (const json* leaf : leaves) CHECK((*leaf)["closed"] == true);
}

TEST_CASE("four-body membership powers are pinned") {
    Certificate c = certify(4);
    REQUIRE(c.memberships.size() == 8);
    const struct {
        const char* node;
        int power;
    } expect[8] = {{"root", 2},           {"root", 2},
                   {"k13 = k23", 1},      {"k14 = k24", 1},
                   {"m3 = k24^3 - 1", 1}, {"k24 = 1", 1},
                   {"k23 = 1", 2},        {"k14 = 1", 1}};
    for (std::size_t i = 0; i < 8; ++i) {
        CAPTURE(i);
        CHECK(c.memberships[i].node == expect[i].node);
        CHECK(c.memberships[i].power == expect[i].power);
        CHECK(c.memberships[i].normal_form == "0");
        CHECK(c.memberships[i].ok);
    }
}

TEST_CASE("four-body leaf arguments") {
    Certificate c = certify(4);
    json doc = json::parse(c.json_text);
    const json& root = doc["case_tree"];

    const json* equal_all = find_node(root, "k13 = 1");
    REQUIRE(equal_all);
    CHECK((*equal_all)["leaf"]["kind"] == "x_constrained");
    CHECK((*equal_all)["leaf"]["witness"] == "x^3 - 4");
    CHECK((*equal_all)["leaf"]["positive_root_count"] == 1);
    CHECK((*equal_all)["leaf"]["closed"] == true);

    const json* contradiction = find_node(root, "m3 = k24^3 - 1");
    REQUIRE(contradiction);
    CHECK((*contradiction)["basis"] == json::array({"k24^3 - 1"}));
    CHECK((*contradiction)["leaf"]["kind"] == "contradiction");
    CHECK((*contradiction)["leaf"]["closed"] == true);

    const json* last_equal = find_node(root, "k14 = 1");
    REQUIRE(last_equal);
    CHECK((*last_equal)["basis"] == json::array({"k13^3 - 1"}));

    const json* side = find_node(root, "x = k13 or x = k23");
    REQUIRE(side);
    CHECK((*side)["leaf"]["kind"] == "x_constrained");
    CHECK((*side)["leaf"]["witness"] ==
          "k13^3*k23^3 - k13^3*x^3 - k23^3*x^3 + x^6");
    CHECK((*side)["leaf"]["closed"] == true);
}

TEST_CASE("certificates serialize deterministically and replay") {
    Certificate a3 = certify(3);
    Certificate b3 = certify(3);
    CHECK(a3.json_text == b3.json_text);
    CHECK(replay_matches(a3));

    Certificate a4 = certify(4);
    Certificate b4 = certify(4);
    CHECK(a4.json_text == b4.json_text);
    CHECK(replay_matches(a4));
    CHECK(a4.json_text.back() == '\n');
}

TEST_CASE("reversed order convention reaches the same verdict") {
    Certificate c = certify(4, OrderConvention::k13_smallest);
    CHECK(c.verdict == "UNHINGED");
    CHECK(c.branch_count == 2);
    CHECK(c.leaf_count == 3);
    CHECK(c.all_leaves_closed);
    CHECK(c.all_memberships_ok);

    json doc = json::parse(c.json_text);
    CHECK(doc["order_convention"] == "k13-smallest");
    CHECK(doc["variable_order"] ==
          json::array({"m3", "m2", "m1", "k24", "k23", "k14", "k13"}));

    std::vector<int> powers, expect{1, 1, 1, 1, 1, 2, 2, 2};
    for (const auto& m : c.memberships) powers.push_back(m.power);
    std::sort(powers.begin(), powers.end());
    CHECK(powers == expect);
    CHECK(replay_matches(c));
}

TEST_CASE("unsupported body counts are rejected") {
    CHECK_THROWS_AS(certify(2), std::invalid_argument);
    CHECK_THROWS_AS(certify(5), std::invalid_argument);
}
