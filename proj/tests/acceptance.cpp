// Acceptance gate: one PASS/FAIL line per criterion, exit 0 only when all
// pass. argv[1] is the path to the command-line binary, used by the
// criteria that exercise the full process boundary (checkpoint resume and
// certificate audit).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "medians/certificate.hpp"
#include "medians/curves.hpp"
#include "medians/search.hpp"
#include "medians/triangle.hpp"

using namespace medians;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int idx, const std::string& label, bool ok, long ms, const std::string& note = "") {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << idx << "  " << label << "  (" << ms << " ms)";
    if (!ok && !note.empty()) std::cout << "  -- " << note;
    std::cout << "\n";
    if (!ok) ++g_failures;
}

template <typename F>
void criterion(int idx, const std::string& label, F body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body(note);
    } catch (const std::exception& e) {
        ok = false;
        note = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    report(idx, label, ok, ms, note);
}

int run_command(const std::string& cmd, const fs::path& log) {
    std::string full = cmd + " > \"" + log.string() + "\" 2>&1";
    int status = std::system(full.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::ordered_json load_json(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return nlohmann::ordered_json::parse(buf.str());
}

std::vector<QuadPoint> parse_point_list(const std::string& w) {
    std::vector<QuadPoint> pts;
    std::istringstream in(w);
    std::string part;
    while (std::getline(in, part, ';')) {
        size_t comma = part.find(',');
        Rational x = parse_rational(part.substr(0, comma));
        Rational y = parse_rational(part.substr(comma + 1));
        pts.emplace_back(x, y, Integer(1));
    }
    return pts;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli-binary>\n";
        return 2;
    }
    const std::string cli = std::string("\"") + argv[1] + "\"";
    fs::path work = fs::temp_directory_path() / "medians-acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    criterion(1, "right-angle curve has genus 2 with squarefree model", [&](std::string& note) {
        RationalPoly f = hyperelliptic_rhs(build_right_angle_curve());
        bool sf = is_squarefree(f);
        long g = hyperelliptic_genus(f.degree(), sf);
        if (g != 2) note = "genus " + std::to_string(g);
        return sf && g == 2;
    });

    criterion(2, "every small rational angle gives four branch points and genus >= 1",
              [&](std::string& note) {
                  auto angles = enumerate_rational_angles(HeightBound(20));
                  if (angles.empty()) {
                      note = "no angles";
                      return false;
                  }
                  for (const auto& [lambda, alpha] : angles) {
                      (void)alpha;
                      CircleEllipseReport ce = circle_ellipse_distinct(lambda);
                      if (!ce.distinct || ce.discriminant.sign() >= 0) {
                          note = "discriminant not negative at " + to_string(lambda);
                          return false;
                      }
                      BranchPointSet b = x1_branch_points(lambda);
                      if (b.points.size() != 4 || b.points[0].x_sq == b.points[2].x_sq) {
                          note = "branch points collide at " + to_string(lambda);
                          return false;
                      }
                      for (const auto& p : b.points)
                          if (!p.simple || !p.transverse) {
                              note = "non-simple branch point at " + to_string(lambda);
                              return false;
                          }
                      if (rh_genus_lower_bound(2, 0, {2, 2, 2, 2}) != 1) {
                          note = "wrong genus bound";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(3, "fiber-product genus table (0,0)->1 (1,0)->3 (1,1)->5", [&](std::string& note) {
        GenusReport a = fiber_product_genus(0, 0, false);
        GenusReport b = fiber_product_genus(1, 0, false);
        GenusReport c = fiber_product_genus(1, 1, false);
        bool ok = a.arithmetic_genus == 1 && b.arithmetic_genus == 3 &&
                  c.arithmetic_genus == 5 && c.geometric_genus_exact == 5;
        if (!ok) note = "table mismatch";
        return ok;
    });

    criterion(4, "elliptic plus disjoint line has arithmetic genus 0, not 1",
              [&](std::string& note) {
                  long pa = reducible_arithmetic_genus({1, 0}, {{0, 0}, {0, 0}});
                  if (pa != 0) {
                      note = "got " + std::to_string(pa);
                      return false;
                  }
                  return pa != 1;
              });

    criterion(5, "median identity on 1000 random triangles and the integer-median triangle",
              [&](std::string& note) {
                  std::mt19937 rng(8675309);
                  std::uniform_int_distribution<long> num(1, 1000), den(1, 40);
                  for (int i = 0; i < 1000; ++i) {
                      Rational u(num(rng), den(rng)), v(num(rng), den(rng)), w(num(rng), den(rng));
                      TriangleSides s(u + v, v + w, w + u);
                      MedianTriple m = medians_squared_from_sides(s);
                      if (Rational(4) * (m.m1_sq + m.m2_sq + m.m3_sq) !=
                          Rational(3) * (square(s.a) + square(s.b) + square(s.c))) {
                          note = "identity failed at sample " + std::to_string(i);
                          return false;
                      }
                  }
                  TriangleSides s(Rational(136), Rational(170), Rational(174));
                  MedianTriple m = medians_squared_from_sides(s);
                  if (m.m1_sq != Rational(24964) || m.m2_sq != Rational(17161) ||
                      m.m3_sq != Rational(16129)) {
                      note = "median squares off";
                      return false;
                  }
                  Rational area_sq = area_squared_from_sides(s);
                  if (area_sq != Rational(115315200) ||
                      area_sq != Rational(16) * Rational(7207200)) {
                      note = "area squared is " + to_string(area_sq);
                      return false;
                  }
                  if (is_rational_square(area_sq)) {
                      note = "area unexpectedly rational";
                      return false;
                  }
                  PerfectVerdict v = is_perfect_triangle(s);
                  if (v.perfect || v.first_failure != TriangleDefect::area) {
                      note = "verdict did not stop at the area";
                      return false;
                  }
                  return true;
              });

    criterion(6, "normalization round-trip and the corrected abscissa recovery",
              [&](std::string& note) {
                  std::vector<std::pair<QuadElem, QuadElem>> raw{
                      {QuadElem(Rational(0)), QuadElem(Rational(0))},
                      {QuadElem(Rational(2)), QuadElem(Rational(0))},
                      {QuadElem(Rational(1)), QuadElem(Rational(4))}};
                  MedianSet s = normalize_median_set(raw);
                  if (s.k != 1 || s.points.size() != 3 ||
                      s.points[2] != QuadPoint(Rational(1, 2), Rational(2), Integer(1))) {
                      note = "normalization off";
                      return false;
                  }
                  Rational r1(2), r2(5, 4);
                  if (third_vertex_x_from_medians(r1, r2) != Rational(1, 2)) {
                      note = "corrected recovery failed";
                      return false;
                  }
                  // dividing by 6 instead of 3 must not reproduce the abscissa
                  Rational misdivided =
                      (square(r1) - Rational(4) * square(r2)) / Rational(6) + Rational(5, 4);
                  if (misdivided == Rational(1, 2)) {
                      note = "misdivided variant unexpectedly agrees";
                      return false;
                  }
                  return true;
              });

    criterion(7, "parallel engine matches the naive oracle on all four targets",
              [&](std::string& note) {
                  EngineOptions par;
                  par.workers = 4;
                  RationalPoly rhs = hyperelliptic_rhs(build_right_angle_curve());
                  SearchResult se = search_even_sextic_points(rhs, HeightBound(50), par);
                  SearchResult so = oracle_sextic_points(rhs, HeightBound(50));
                  if (se.witnesses != so.witnesses || se.scanned != so.scanned) {
                      note = "sextic disagrees";
                      return false;
                  }
                  SearchResult le = search_line_case_points(Rational(0), Rational(2), Rational(0),
                                                            Rational(1), Rational(2),
                                                            HeightBound(50), par);
                  SearchResult lo = oracle_line_case_points(Rational(0), Rational(2), Rational(0),
                                                            Rational(1), Rational(2),
                                                            HeightBound(50));
                  if (le.witnesses != lo.witnesses || le.scanned != lo.scanned) {
                      note = "line case disagrees";
                      return false;
                  }
                  SearchResult pe = search_perfect_at_angle(Rational(3, 5), Rational(4, 5),
                                                            HeightBound(50), par);
                  SearchResult po =
                      oracle_perfect_at_angle(Rational(3, 5), Rational(4, 5), HeightBound(50));
                  if (pe.witnesses != po.witnesses || pe.scanned != po.scanned) {
                      note = "perfect disagrees";
                      return false;
                  }
                  SearchResult me = search_median_sets(Integer(1), HeightBound(6), 4, par);
                  SearchResult mo = oracle_median_sets(Integer(1), HeightBound(6), 4);
                  if (me.witnesses != mo.witnesses || me.scanned != mo.scanned) {
                      note = "median sets disagree";
                      return false;
                  }
                  return true;
              });

    criterion(8, "interrupted 8-worker sextic search resumes to the single-worker bytes",
              [&](std::string& note) {
                  fs::path ck = work / "resume.ckpt";
                  fs::path log = work / "c8.log";
                  fs::path resumed = work / "resumed.json";
                  fs::path straight = work / "straight.json";
                  std::string base = cli + " search sextic --height 500 --workers 8 --checkpoint \"" +
                                     ck.string() + "\"";
                  if (run_command(base + " --unit-size 128 --max-units 3", log) != 0) {
                      note = "interrupt phase failed";
                      return false;
                  }
                  if (!fs::exists(ck)) {
                      note = "no checkpoint written";
                      return false;
                  }
                  if (run_command(base + " --unit-size 128 --out \"" + resumed.string() + "\"",
                                  log) != 0) {
                      note = "resume phase failed";
                      return false;
                  }
                  if (run_command(cli + " search sextic --height 500 --workers 1 --out \"" +
                                      straight.string() + "\"",
                                  log) != 0) {
                      note = "single-worker run failed";
                      return false;
                  }
                  auto a = load_json(resumed);
                  auto b = load_json(straight);
                  a.erase("tool_version");
                  b.erase("tool_version");
                  if (a != b) {
                      note = "certificates differ";
                      return false;
                  }
                  return true;
              });

    criterion(9, "perfect-triangle search at 3/5 up to height 200 audits empty and exhaustive",
              [&](std::string& note) {
                  fs::path cert = work / "perfect200.json";
                  fs::path log = work / "c9.log";
                  if (run_command(cli + " search perfect --lambda 3/5 --height 200 --workers 4" +
                                      " --out \"" + cert.string() + "\"",
                                  log) != 0) {
                      note = "search failed";
                      return false;
                  }
                  auto j = load_json(cert);
                  if (!j["result"]["witnesses"].empty() || j["exhaustive"] != true ||
                      j["scanned"].get<long>() <= 0) {
                      note = "certificate content unexpected";
                      return false;
                  }
                  if (run_command(cli + " check \"" + cert.string() + "\"", log) != 0) {
                      note = "audit failed";
                      return false;
                  }
                  return true;
              });

    criterion(10, "median-set search at k=1 n=4 height 6 is exhaustive with valid witnesses",
              [&](std::string& note) {
                  EngineOptions par;
                  par.workers = 4;
                  SearchResult r = search_median_sets(Integer(1), HeightBound(6), 4, par);
                  if (!r.exhaustive) {
                      note = "not exhaustive";
                      return false;
                  }
                  for (const auto& w : r.witnesses) {
                      MedianSet s{parse_point_list(w), Integer(1), true};
                      MedianSetVerdict v = verify_median_set(s);
                      if (!v.valid) {
                          note = "witness fails re-verification: " + w;
                          return false;
                      }
                  }
                  return true;
              });

    fs::remove_all(work);
    if (g_failures == 0) {
        std::cout << "all acceptance criteria hold\n";
        return 0;
    }
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
}
