// Acceptance gate: runs every criterion and prints one pass/fail line per
// criterion. Exits nonzero if any criterion fails.
#include <cstdio>
#include <filesystem>
#include <string>

#include "berg/suite.hpp"

int main() {
    std::filesystem::path out =
        std::filesystem::temp_directory_path() / "berg_acceptance";
    std::filesystem::create_directories(out);

    const auto results = berg::run_acceptance(out.string(), 20240901, 1);
    std::fputs(berg::format_results(results).c_str(), stdout);
    std::fflush(stdout);

    int failures = 0;
    for (const auto& r : results)
        if (!r.pass) ++failures;
    return failures == 0 ? 0 : 1;
}
