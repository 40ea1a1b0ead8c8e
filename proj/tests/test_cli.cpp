// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <sys/wait.h>
#include <string>

#include <doctest.h>

namespace {

// HYDRA_CLI_BIN is provided by the test harness (points at the built CLI).
const char* cli_path() { return std::getenv("HYDRA_CLI_BIN"); }

int run_cli(const std::string& args) {
    const std::string cmd = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cli exit codes" * doctest::skip(cli_path() == nullptr)) {
    CHECK(run_cli("golden") == 0);
    CHECK(run_cli("golden --anchor per_head_predecessor") == 1);
    CHECK(run_cli("golden --tol 1e-9") == 1);
    CHECK(run_cli("gradcheck --trials 10") == 0);
    CHECK(run_cli("gradcheck --trials 10 --tol 1e-12") == 1);
    CHECK(run_cli("equiv --trials 3") == 0);
    CHECK(run_cli("equiv --trials 3 --inject-fault") == 1);

    // usage/parse errors exit 2
    CHECK(run_cli("golden --no-such-flag") == 2);
    CHECK(run_cli("forecast") == 2);
    CHECK(run_cli("forecast --synthetic fourier") == 2);
    CHECK(run_cli("forecast --input missing_file.csv") == 2);
    CHECK(run_cli("") == 2);

    CHECK(run_cli("forecast --synthetic sar --variates 2 --context 40 --horizon 8 --seed 3") == 0);
    CHECK(run_cli("bench --t 64 --v 2 --dim 8 --chunk-t 8 --reps 1") == 0);
}
