#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "image_fixtures.hpp"
#include "redist/analytic.hpp"
#include "redist/image.hpp"
#include "redist/sample_io.hpp"
#include "redist/serialization.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    const auto d = fs::temp_directory_path() / "redist_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome run(const std::string& args) {
  const std::string out = path("stdout.txt"), err = path("stderr.txt");
  const std::string command = std::string("\"") + REDIST_CLI + "\" " + args + " >" + out + " 2>" + err;
  const int status = std::system(command.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

void text_file(const std::string& name, const std::string& body) { std::ofstream(path(name)) << body; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("fit of three values with three bins") {
    text_file("three.txt", "3\n1\n2\n");
    const auto r = run("fit " + path("three.txt") + " --bins 3 -o " + path("three.json"));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("K=3") != std::string::npos);
    CHECK(r.out.find("n=3") != std::string::npos);
    const auto d = redist::load_distribution(path("three.json"));
    CHECK(std::get<redist::LearnedDistribution>(d.model()).lattice().lp ==
          std::vector<double>{0.25, 0.5, 0.75});
  }

  TEST_CASE("fit defaults to 5000 bins on a million values") {
    redist::write_samples(path("million.f64"), redist::AnalyticDistribution::normal(0, 1).rvs(1000000, 1));
    const auto r = run("fit " + path("million.f64") + " -o " + path("million.json"));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("K=5000") != std::string::npos);
  }

  TEST_CASE("fit of an empty file is a degenerate-data failure") {
    text_file("empty.txt", "");
    const auto r = run("fit " + path("empty.txt") + " -o " + path("empty.json"));
    CHECK(r.code == 1);
    CHECK(r.err.find("degenerate data") != std::string::npos);
  }

  TEST_CASE("kde fit") {
    text_file("few.txt", "0.1\n0.5\n0.9\n1.7\n");
    const auto r = run("fit " + path("few.txt") + " --estimator kde --grid-density 512 -o " + path("kde.json"));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("estimator=kde K=512") != std::string::npos);
    CHECK(redist::load_distribution(path("kde.json")).kind() == "kde");
  }

  TEST_CASE("transform, inverse and cdt") {
    text_file("half.txt", "0.5\n");
    REQUIRE(run("transform " + path("half.txt") + " --source uniform:0,1 --target normal:0,1 -o " +
                path("half_out.txt")).code == 0);
    CHECK(redist::read_samples(path("half_out.txt")) == std::vector<double>{0.0});
    text_file("zero.txt", "0\n");
    REQUIRE(run("inverse-transform " + path("zero.txt") + " --source uniform:0,1 --target normal:0,1 -o " +
                path("zero_out.txt")).code == 0);
    CHECK(redist::read_samples(path("zero_out.txt")) == std::vector<double>{0.5});
    text_file("cdt.txt", "0.5\n");
    REQUIRE(run("cdt " + path("cdt.txt") + " --source uniform:0,1 --target uniform:0,2 -o " +
                path("cdt_out.txt")).code == 0);
    CHECK(redist::read_samples(path("cdt_out.txt"))[0] == doctest::Approx(0.5));
  }

  TEST_CASE("streaming reports the global element index") {
    std::ostringstream body;
    for (int i = 0; i < 25; ++i) body << (i == 17 ? 1.5 : 0.25) << "\n";
    text_file("bad.txt", body.str());
    const auto r = run("transform " + path("bad.txt") + " --chunk-size 4 --source uniform:0,1 "
                       "--target normal:0,1 -o " + path("bad_out.txt"));
    CHECK(r.code == 1);
    CHECK(r.err.find("index 17") != std::string::npos);
    CHECK(r.err.find("1.5") != std::string::npos);
  }

  TEST_CASE("chunked output equals a single pass") {
    const auto x = redist::AnalyticDistribution::uniform(0, 1).rvs(10000, 2);
    redist::write_samples(path("u.f64"), x);
    REQUIRE(run("transform " + path("u.f64") + " --chunk-size 333 --source uniform:0,1 --target "
                "exponential:2 -o " + path("u_small.f64")).code == 0);
    REQUIRE(run("transform " + path("u.f64") + " --source uniform:0,1 --target exponential:2 -o " +
                path("u_big.f64")).code == 0);
    CHECK(slurp(path("u_small.f64")) == slurp(path("u_big.f64")));
  }

  TEST_CASE("learned spec and ks-check") {
    redist::write_samples(path("src.f64"), redist::AnalyticDistribution::exponential(1).rvs(100000, 3));
    REQUIRE(run("fit " + path("src.f64") + " -o " + path("src.json")).code == 0);
    redist::write_samples(path("held.f64"), redist::AnalyticDistribution::exponential(1).rvs(20000, 4));
    REQUIRE(run("transform " + path("held.f64") + " --source learned:" + path("src.json") +
                " --target normal:0,1 -o " + path("held_out.f64")).code == 0);
    const auto r = run("ks-check " + path("held_out.f64") + " --target normal:0,1");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"pass\":true") != std::string::npos);
  }

  TEST_CASE("ks-check pass, fail and tiny samples") {
    redist::write_samples(path("n.f64"), redist::AnalyticDistribution::normal(0, 1).rvs(100000, 5));
    CHECK(run("ks-check " + path("n.f64") + " --target normal:0,1").code == 0);
    redist::write_samples(path("un.f64"), redist::AnalyticDistribution::uniform(0, 1).rvs(100000, 5));
    const auto fail = run("ks-check " + path("un.f64") + " --target normal:0,1");
    CHECK(fail.code == 1);
    CHECK(fail.out.find("\"pass\":false") != std::string::npos);
    redist::write_samples(path("tiny.f64"), redist::AnalyticDistribution::normal(0, 1).rvs(10, 5));
    const auto tiny = run("ks-check " + path("tiny.f64") + " --target normal:0,1");
    CHECK(tiny.code == 1);
    CHECK(tiny.err.find("n >= 40") != std::string::npos);
  }

  TEST_CASE("usage errors") {
    text_file("one.txt", "0.5\n");
    const auto cauchy = run("transform " + path("one.txt") + " --source cauchy:0,1 --target normal:0,1 -o " +
                            path("c.txt"));
    CHECK(cauchy.code == 2);
    CHECK(cauchy.err.find("normal") != std::string::npos);
    CHECK(cauchy.err.find("exponential") != std::string::npos);
    CHECK(run("").code == 2);
    CHECK(run("fit").code == 2);
    CHECK(run("fit " + path("nowhere.txt") + " -o " + path("x.json")).code == 2);
    CHECK(run("--help").code == 0);
  }

  TEST_CASE("consistency report") {
    const auto r = run("consistency --trials 200 --n 512 --seed 3");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"theoretical_variance\":1.5707963267948") != std::string::npos);
  }

  TEST_CASE("bench csv") {
    const auto r = run("bench --n 1000,2000 --k 100 --algorithms learned,kde --reps 1");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("algorithm,n,k,wall_time_s,peak_extra_bytes\n", 0) == 0);
    CHECK(r.out.find("\nlearned,1000,100,") != std::string::npos);
    CHECK(r.out.find("\nkde,2000,100,") != std::string::npos);
  }

  TEST_CASE("image commands") {
    const auto a = fixture::gradient_rgb(48, 64, 1);
    redist::write_image(path("a.png"), a);
    redist::write_image(path("tile1.png"), fixture::gradient_rgb(40, 40, 2));
    redist::write_image(path("tile2.png"), fixture::gradient_rgb(30, 45, 3));

    REQUIRE(run("match-colors --source " + path("a.png") + " --reference " + path("a.png") + " -o " +
                path("aa.png")).code == 0);
    CHECK(redist::read_image(path("aa.png")) == a);

    REQUIRE(run("mosaic --canvas " + path("a.png") + " --tiles " + path("tile1.png") + " " +
                path("tile2.png") + " --tile-size 16 --alpha 1 -o " + path("m1.png")).code == 0);
    CHECK(slurp(path("m1.png")) == slurp(path("a.png")));

    const std::string styled = "mosaic --canvas " + path("a.png") + " --tiles " + path("tile1.png") + " " +
                               path("tile2.png") + " --tile-size 16 --sigma 0.05 --alpha 0.25 --seed 7 -o ";
    REQUIRE(run(styled + path("m2.png")).code == 0);
    REQUIRE(run(styled + path("m3.png")).code == 0);
    CHECK(slurp(path("m2.png")) == slurp(path("m3.png")));

    const auto tiny = run("mosaic --canvas " + path("a.png") + " --tiles " + path("tile2.png") +
                          " --tile-size 64 -o " + path("m4.png"));
    CHECK(tiny.code == 1);

    fs::create_directories(path("aug"));
    REQUIRE(run("augment --inputs " + path("a.png") + " " + path("tile1.png") + " --out-dir " +
                path("aug")).code == 0);
    CHECK(fs::exists(workdir() / "aug" / "aug_0_1.png"));
    CHECK(fs::exists(workdir() / "aug" / "aug_1_1.png"));
    CHECK(run("match-colors --source " + path("missing.png") + " --reference " + path("a.png") + " -o " +
              path("z.png")).code == 2);
  }
}
