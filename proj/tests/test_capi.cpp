// Exercises the shared-library surface exactly as an external consumer
// would: only the public C header, no core internals.

#include <backstep.h>

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("backstep_capi_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("version and status names") {
    CHECK(std::strlen(bstp_version()) >= 5);
    CHECK(std::string(bstp_status_name(BSTP_OK)) == "ok");
    CHECK(std::string(bstp_status_name(BSTP_ERR_PARSE)) == "parse_error");
}

TEST_CASE("config lifecycle and validation") {
    bstp_config* cfg = nullptr;
    REQUIRE(bstp_config_create(&cfg) == BSTP_OK);

    char buf[64];
    REQUIRE(bstp_config_get(cfg, "lambda1", buf, sizeof buf) == BSTP_OK);
    CHECK(std::string(buf) == "20");
    REQUIRE(bstp_config_get(cfg, "scenario", buf, sizeof buf) == BSTP_OK);
    CHECK(std::string(buf) == "open_loop");

    CHECK(bstp_config_set(cfg, "lambda1", "abc") == BSTP_ERR_PARSE);
    CHECK(std::strlen(bstp_last_error()) > 0);
    CHECK(bstp_config_set(cfg, "no_such_key", "1") == BSTP_ERR_PARSE);
    CHECK(bstp_config_set(cfg, "scenario", "state_feedback") == BSTP_OK);
    REQUIRE(bstp_config_get(cfg, "scenario", buf, sizeof buf) == BSTP_OK);
    CHECK(std::string(buf) == "state_feedback");
    CHECK(bstp_config_get(cfg, "scenario", buf, 3) == BSTP_ERR_INVALID_ARGUMENT);

    bstp_config_free(cfg);
}

TEST_CASE("config file loading") {
    TempDir tmp;
    {
        FILE* f = std::fopen(tmp.file("run.cfg").c_str(), "w");
        std::fputs("lambda1 = 20\nlambda2 = 10\nscenario = open_loop\n", f);
        std::fclose(f);
    }
    bstp_config* cfg = nullptr;
    REQUIRE(bstp_config_load(tmp.file("run.cfg").c_str(), &cfg) == BSTP_OK);
    bstp_config_free(cfg);

    bstp_config* missing = nullptr;
    CHECK(bstp_config_load(tmp.file("absent.cfg").c_str(), &missing) == BSTP_ERR_IO);
}

TEST_CASE("kernel solve, values, gains and CSV export") {
    bstp_kernel* k = nullptr;
    REQUIRE(bstp_kernel_solve(BSTP_KERNEL_CONTROL, 20.0, 10.0, 64, 0.0, 0, &k) == BSTP_OK);
    CHECK(bstp_kernel_resolution(k) == 64);

    double val = 0.0;
    REQUIRE(bstp_kernel_value(k, 1, 32, 32, &val) == BSTP_OK); // K^uv(0.5, 0.5)
    CHECK(val == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK(bstp_kernel_value(k, 1, 2, 5, &val) == BSTP_ERR_INVALID_ARGUMENT); // j > i
    CHECK(bstp_kernel_value(k, 7, 2, 1, &val) == BSTP_ERR_INVALID_ARGUMENT);

    int iters = 0;
    double inc = 0.0;
    REQUIRE(bstp_kernel_iterations(k, 0, &iters, &inc) == BSTP_OK);
    CHECK(iters >= 2);
    CHECK(inc <= 1e-12);

    bstp_gains* g = nullptr;
    REQUIRE(bstp_gains_extract(k, BSTP_SETUP_ANTICOLLOCATED, &g) == BSTP_OK);
    double fb = 0.0;
    REQUIRE(bstp_gains_feedback(g, 1, 64, &fb) == BSTP_OK); // K^uv(1, 1)
    CHECK(fb == doctest::Approx(-10.0).epsilon(1e-12));
    CHECK(bstp_gains_injection(g, 1, 0, &fb) == BSTP_ERR_INVALID_ARGUMENT);
    bstp_gains_free(g);

    TempDir tmp;
    REQUIRE(bstp_kernel_write_csv(k, tmp.file("control.csv").c_str()) == BSTP_OK);
    CHECK(std::filesystem::file_size(tmp.file("control.csv")) > 1000);

    bstp_kernel_free(k);
}

TEST_CASE("observer kernel gains through the C surface") {
    bstp_kernel* k = nullptr;
    REQUIRE(bstp_kernel_solve(BSTP_KERNEL_OBSERVER_COLLOCATED, 0.0, 10.0, 64, 0.0, 0, &k) == BSTP_OK);
    bstp_gains* g = nullptr;
    CHECK(bstp_gains_extract(k, BSTP_SETUP_ANTICOLLOCATED, &g) == BSTP_ERR_FAMILY_MISMATCH);
    REQUIRE(bstp_gains_extract(k, BSTP_SETUP_COLLOCATED, &g) == BSTP_OK);
    double p = 0.0;
    REQUIRE(bstp_gains_injection(g, 2, 32, &p) == BSTP_OK);
    CHECK(p == doctest::Approx(-5.0).epsilon(1e-9)); // P^vu(x, 1) = -5
    REQUIRE(bstp_gains_injection(g, 1, 32, &p) == BSTP_OK);
    CHECK(std::fabs(p) <= 1e-12);
    bstp_gains_free(g);
    bstp_kernel_free(k);
}

TEST_CASE("simulation, norms and decay fit") {
    bstp_config* cfg = nullptr;
    REQUIRE(bstp_config_create(&cfg) == BSTP_OK);
    REQUIRE(bstp_config_set(cfg, "scenario", "state_feedback") == BSTP_OK);
    REQUIRE(bstp_config_set(cfg, "nx", "100") == BSTP_OK);
    REQUIRE(bstp_config_set(cfg, "n", "96") == BSTP_OK);
    REQUIRE(bstp_config_set(cfg, "dt", "5e-4") == BSTP_OK);
    REQUIRE(bstp_config_set(cfg, "t_final", "2.0") == BSTP_OK);
    REQUIRE(bstp_config_set(cfg, "record_every", "10") == BSTP_OK);

    bstp_trajectory* traj = nullptr;
    REQUIRE(bstp_simulate(cfg, &traj) == BSTP_OK);
    CHECK(bstp_trajectory_snapshots(traj) == 401);

    double t = 0.0, n0 = 0.0, nT = 0.0;
    REQUIRE(bstp_trajectory_time(traj, 400, &t) == BSTP_OK);
    CHECK(t == doctest::Approx(2.0));
    REQUIRE(bstp_trajectory_norm(traj, 0, 0, &n0) == BSTP_OK);
    REQUIRE(bstp_trajectory_norm(traj, 400, 0, &nT) == BSTP_OK);
    CHECK(nT < 5e-2 * n0); // stabilized (e^{-2.47 * 2} times transform constants)
    CHECK(bstp_trajectory_norm(traj, 0, 1, &n0) == BSTP_ERR_INVALID_ARGUMENT); // no observer

    double rate = 0.0, r2 = 0.0;
    REQUIRE(bstp_fit_decay(traj, 0, 1.0, 2.0, &rate, &r2) == BSTP_OK);
    CHECK(rate == doctest::Approx(2.4674).epsilon(0.10));
    CHECK(r2 > 0.99);

    double u = 0.0, v = 0.0;
    REQUIRE(bstp_trajectory_state(traj, 0, 0, &u, &v, nullptr, nullptr) == BSTP_OK);
    CHECK(u == doctest::Approx(1.0));

    TempDir tmp;
    REQUIRE(bstp_trajectory_write_norms_csv(traj, tmp.file("norms.csv").c_str()) == BSTP_OK);
    REQUIRE(bstp_trajectory_write_snapshots_csv(traj, tmp.file("snaps.csv").c_str()) == BSTP_OK);

    bstp_trajectory_free(traj);
    bstp_config_free(cfg);
}

TEST_CASE("modal rate and its refusal for complex spectra") {
    double r = 0.0;
    REQUIRE(bstp_modal_rate(0.0, 0.0, &r) == BSTP_OK);
    CHECK(r == doctest::Approx(-2.4674011).epsilon(1e-7));
    CHECK(bstp_modal_rate(1.0, -1.0, &r) == BSTP_ERR_COMPLEX_SPECTRUM);
    CHECK(std::string(bstp_last_error()).find("complex") != std::string::npos);
}

TEST_CASE("kernels command writes the documented files") {
    TempDir tmp;
    bstp_config* cfg = nullptr;
    REQUIRE(bstp_config_create(&cfg) == BSTP_OK);
    REQUIRE(bstp_config_set(cfg, "n", "24") == BSTP_OK);
    REQUIRE(bstp_cmd_kernels(cfg, tmp.file("out").c_str()) == BSTP_OK);
    for (const char* name :
         {"kernel_control.csv", "kernel_inverse.csv", "kernel_observer_anticollocated.csv",
          "kernel_observer_collocated.csv", "gains_control.csv",
          "gains_observer_anticollocated.csv", "gains_observer_collocated.csv", "manifest.json"})
        CHECK(std::filesystem::exists(std::filesystem::path(tmp.file("out")) / name));

    // the y = 1 row of the gain curve carries Kuv = -lambda1 / 2 = -10
    std::ifstream gains(std::filesystem::path(tmp.file("out")) / "gains_control.csv");
    std::string line, last;
    while (std::getline(gains, line))
        if (!line.empty()) last = line;
    double y = 0, kuu = 0, kuv = 0;
    REQUIRE(std::sscanf(last.c_str(), "%lf,%lf,%lf", &y, &kuu, &kuv) == 3);
    CHECK(y == 1.0);
    CHECK(kuv == doctest::Approx(-10.0).epsilon(1e-12));

    bstp_config_free(cfg);
}
