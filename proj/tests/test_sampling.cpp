#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <random>

#include "dmri/sampling.hpp"
#include "helpers.hpp"

using namespace dmri;

TEST_CASE("electrostatic energy closed forms") {
    std::vector<Eigen::Vector3d> two{{1, 0, 0}, {0, 1, 0}};
    REQUIRE(electrostatic_energy(two) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));

    std::vector<Eigen::Vector3d> one{{0, 0, 1}};
    REQUIRE(electrostatic_energy(one) == 0.0);

    std::vector<Eigen::Vector3d> antipodal{{1, 0, 0}, {-1, 0, 0}};
    try {
        electrostatic_energy(antipodal);
        FAIL("expected an error");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::antipodal_pair);
    }
}

TEST_CASE("subsample trivial cases") {
    std::vector<Eigen::Vector3d> dirs{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    REQUIRE(subsample_shell(dirs, 3) == std::vector<int>{0, 1, 2});
    // all pairs tie; the lowest-index pair wins
    REQUIRE(subsample_shell(dirs, 2) == std::vector<int>{0, 1});
    try {
        subsample_shell(dirs, 4);
        FAIL("expected an error");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::out_of_range);
    }
}

TEST_CASE("greedy+exchange is near the exhaustive optimum for n=8, k=3") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Eigen::Vector3d> dirs;
        for (int i = 0; i < 8; ++i) dirs.push_back(test_helpers::random_unit(rng));

        std::vector<int> sel = subsample_shell(dirs, 3);
        std::vector<Eigen::Vector3d> chosen;
        for (int i : sel) chosen.push_back(dirs[i]);
        double got = electrostatic_energy(chosen);

        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j)
                for (int k = j + 1; k < 8; ++k) {
                    std::vector<Eigen::Vector3d> c{dirs[i], dirs[j], dirs[k]};
                    best = std::min(best, electrostatic_energy(c));
                }
        REQUIRE(got <= best * 1.10);
    }
}

TEST_CASE("selected subsets beat random subsets on a 90-direction shell") {
    GradientTable t = make_protocol({1000.0}, 90, 0);
    std::vector<Eigen::Vector3d> dirs;
    for (const auto& e : t.entries) dirs.push_back(e.dir);

    std::vector<int> sel = subsample_shell(dirs, 6);
    std::vector<Eigen::Vector3d> chosen;
    for (int i : sel) chosen.push_back(dirs[i]);
    double got = electrostatic_energy(chosen);

    std::mt19937_64 rng(99);
    double total = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> idx(90);
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<Eigen::Vector3d> sample;
        for (int i = 0; i < 6; ++i) sample.push_back(dirs[idx[i]]);
        total += electrostatic_energy(sample);
    }
    REQUIRE(got < total / 100.0);
}

TEST_CASE("selection is invariant under global rotation") {
    std::mt19937_64 rng(31);
    std::vector<Eigen::Vector3d> dirs;
    for (int i = 0; i < 20; ++i) dirs.push_back(test_helpers::random_unit(rng));
    std::vector<int> base = subsample_shell(dirs, 5);

    Eigen::Matrix3d r = test_helpers::random_rotation(rng);
    std::vector<Eigen::Vector3d> rotated;
    for (const auto& d : dirs) rotated.push_back((r * d).normalized());
    REQUIRE(subsample_shell(rotated, 5) == base);
}

TEST_CASE("apply_plan selects the expected volumes") {
    GradientTable t = make_protocol({1000, 2000, 3000}, 90, 18);
    Volume4D full(3, 3, 3, t.size());
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& v : full.data) v = u(rng);

    SECTION("identity plan") {
        SubsamplingPlan plan;
        plan.k_per_shell = 90;
        plan.b0_indices = t.b0_indices();
        for (const Shell& sh : t.shells()) plan.shells.emplace_back(sh.b, sh.indices);
        auto [sparse, table] = apply_plan(full, t, plan);
        REQUIRE(sparse.d == full.d);
        REQUIRE(sparse.data == full.data);
    }

    SECTION("6 per shell + one b0 gives 19 volumes") {
        SubsamplingPlan plan = make_plan(t, 6);
        auto [sparse, table] = apply_plan(full, t, plan);
        REQUIRE(sparse.d == 19);
        REQUIRE(table.size() == 19);
        REQUIRE(table.b0_indices().size() == 1);
        REQUIRE(table.shells().size() == 3);
        // voxelwise values are preserved exactly
        std::vector<int> keep = plan.all_indices();
        const std::size_t nvox = full.voxels();
        for (std::size_t c = 0; c < keep.size(); ++c)
            for (std::size_t v = 0; v < nvox; ++v)
                REQUIRE(sparse.data[v + c * nvox] ==
                        full.data[v + static_cast<std::size_t>(keep[c]) * nvox]);
    }

    SECTION("out-of-range index is rejected") {
        SubsamplingPlan plan = make_plan(t, 6);
        plan.shells[0].second[0] = t.size();
        try {
            apply_plan(full, t, plan);
            FAIL("expected an error");
        } catch (const Error& e) {
            REQUIRE(e.code() == Errc::out_of_range);
        }
    }
}

TEST_CASE("plan files roundtrip") {
    GradientTable t = make_protocol({1000, 2000}, 30, 4);
    SubsamplingPlan plan = make_plan(t, 6);
    std::string path =
        (std::filesystem::temp_directory_path() / "dmri_plan_rt.txt").string();
    write_plan(plan, path);
    SubsamplingPlan r = read_plan(path);
    REQUIRE(r.k_per_shell == plan.k_per_shell);
    REQUIRE(r.b0_indices == plan.b0_indices);
    REQUIRE(r.shells.size() == plan.shells.size());
    for (std::size_t i = 0; i < plan.shells.size(); ++i) {
        REQUIRE(r.shells[i].first == Catch::Approx(plan.shells[i].first));
        REQUIRE(r.shells[i].second == plan.shells[i].second);
    }
}
