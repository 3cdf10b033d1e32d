// certify.hpp -- end-to-end nonexistence certificates.
//
// Runs the full symbolic pipeline for 3 or 4 bodies and assembles a JSON
// certificate: the cleared linear systems, the derived determinant
// constraints, and (for n = 4) a Groebner case tree whose every step is an
// explicit ideal-membership or positivity record.  All polynomials are
// stored as canonical strings, so re-running the pipeline must reproduce
// the certificate byte for byte.
#pragma once

#include <string>
#include <vector>

namespace unhinge {

// Which end of the Groebner variable tuple (k13, k14, k23, k24, m1, m2, m3)
// is treated as the largest variable under degrevlex.
enum class OrderConvention { k13_largest, k13_smallest };

// One ideal-membership claim checked at a case-tree node.  `power` is the
// smallest exponent j with normal_form(poly^j, basis) = 0 (at most
// kMaxMembershipPower); -1 with ok = false if no such exponent exists, in
// which case normal_form holds the nonzero normal form of poly itself.
struct MembershipRecord {
    std::string node;
    std::string poly;
    int power = 0;
    std::string normal_form;
    bool ok = false;
};

inline constexpr int kMaxMembershipPower = 6;

struct Certificate {
    int problem = 0;                 // 3 or 4
    std::string order_convention;    // "k13-largest" or "k13-smallest"
    std::string verdict;             // "UNHINGED" or "FAILURE"
    int branch_count = 0;            // children of the case-split root
    int leaf_count = 0;
    bool all_leaves_closed = false;
    bool all_memberships_ok = false;
    std::vector<MembershipRecord> memberships;  // depth-first tree order
    std::string json_text;           // the full certificate document
};

// Builds the certificate for the chosen body count.  Structural failures
// (a membership without any valid power, an unclosed leaf, a factorization
// that does not match) produce verdict FAILURE with the offending record,
// never an exception; exceptions are reserved for invalid `n`.
Certificate certify(int n,
                    OrderConvention conv = OrderConvention::k13_largest);

// Re-runs the pipeline with the certificate's own parameters and checks
// that the emitted document is byte-identical.
bool replay_matches(const Certificate& cert);

}  // namespace unhinge
