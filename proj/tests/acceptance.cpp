// Acceptance suite: one line per criterion, exit 0 only if everything
// passes. Criteria with stated wall-clock ceilings enforce them.

#include <cstdio>
#include <string>
#include <vector>

#include "latcode/checks.hpp"

using namespace latcode;

namespace {

struct Criterion {
    int number;
    std::string name;
    std::vector<std::string> checks;
    double limit_s;  // 0 = no stated limit
};

const std::vector<Criterion> kCriteria = {
    {1, "kleinian-classification", {"lemma-LHo1"}, 60},
    {2, "construction-identities", {"lemma-LC816", "lemma-LCAB"}, 60},
    {3, "code-counts", {"code-counts"}, 0},
    {4, "recovery-round-trips", {"prop-MTC"}, 0},
    {5, "lattice-identities", {"lemma-LLAB", "lemma-LKKM332", "lattice-counts"}, 300},
    {6, "isometry-engine", {"lemma-LL816"}, 1200},
    {7, "overlattices", {"overlattices-sqrt2E8"}, 600},
    {8, "character-layer", {"character-layer"}, 120},
    {9, "theorem-verdicts",
     {"thm-TCh2", "thm-T3", "thm-MTT", "thm-TAB", "table2-row:L~L", "table2-row:VL~VN"},
     900},
    {10, "property-suites", {"property-suites"}, 0},
};

}  // namespace

int main() {
    bool any_fail = false, any_defect = false;
    for (const Criterion& c : kCriteria) {
        double total_ms = 0;
        std::string status = "PASS";
        std::string detail;
        for (const std::string& id : c.checks) {
            CheckSpec spec;
            spec.id = id;
            spec.precision = 10;
            Report r = run_check(spec);
            total_ms += r.ms;
            if (r.status != "pass") {
                status = (r.status == "defect") ? "DEFECT" : "FAIL";
                detail = id + ": " + r.certificate.dump();
                break;
            }
        }
        if (status == "PASS" && c.limit_s > 0 && total_ms > 1000.0 * c.limit_s) {
            status = "FAIL";
            detail = "exceeded the stated time limit";
        }
        std::printf("%s criterion-%d %s (%.0f ms)%s%s\n", status.c_str(), c.number, c.name.c_str(),
                    total_ms, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (status == "FAIL") any_fail = true;
        if (status == "DEFECT") any_defect = true;
    }
    if (any_defect) return 2;
    return any_fail ? 1 : 0;
}
