/*
   Copyright 2025 The kq authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kq/io.hpp"
#include "kq/ktheory.hpp"
#include "suite.hpp"

using namespace kq;

namespace {

constexpr const char* kVersion = "0.1.0";

// exit codes
constexpr int kOk = 0, kMath = 2, kConfig = 3, kOutOfFamily = 4, kWindow = 5;

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string output;
    std::uint64_t seed = 1;
    int window = 6;
    int bound = -1;  // lambda bound; < 0 means 2N + 4
    int jobs = 1;
    bool pretty = false;
    // dim-table and sample
    int m = 2;
    int max_n = 2;
    int n = 0;
    std::vector<int> dims;
    std::vector<std::string> tau;
};

// FNV-1a, stable across platforms
std::string fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream o;
    o << std::hex << std::setw(16) << std::setfill('0') << h;
    return o.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json config_json(const RunConfig& c) {
    Json j;
    j["command"] = c.command;
    j["inputs"] = c.inputs;
    j["seed"] = c.seed;
    j["window"] = c.window;
    j["bound"] = c.bound;
    j["jobs"] = c.jobs;
    if (c.command == "dim-table" || c.command == "sample") {
        j["m"] = c.m;
        if (c.command == "dim-table") j["max_n"] = c.max_n;
        else j["n"] = c.n, j["dims"] = c.dims;
        j["tau"] = c.tau;
    }
    return j;
}

// the hash covers the config and the bytes of every input file
Json envelope(const RunConfig& c, const std::vector<std::string>& texts, Json result) {
    Json cfg = config_json(c);
    std::string key = cfg.dump();
    for (const auto& t : texts) key += '\n' + t;
    Json out;
    out["tool"] = "kq";
    out["version"] = kVersion;
    out["config"] = cfg;
    out["config_hash"] = fnv1a(key);
    out["result"] = std::move(result);
    return out;
}

Json matrix_json(const ExactMatrix& a) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(scalar_to_json(a(r, c)));
        rows.push_back(row);
    }
    return rows;
}

int lambda_bound(const RunConfig& c, const QuiverPoint& p) { return c.bound >= 0 ? c.bound : default_lambda_bound(p.N()); }

struct Outcome {
    Json result;
    int code = kOk;
};

Outcome cmd_validate(const RunConfig& c, const std::vector<std::string>& texts) {
    Json r;
    QuiverPoint p;
    try {
        // reading a point already checks the moment map
        p = point_from_json(parse_json(texts[0]));
    } catch (const ValidationError& e) {
        r["valid"] = false;
        r["stable"] = false;
        r["diagnostics"] = {e.what()};
        return {r, kMath};
    }
    auto diag = validate_point(p);
    bool stable = diag.empty() && check_stability(p);
    r["valid"] = diag.empty();
    r["stable"] = stable;
    r["diagnostics"] = diag;
    Json warn = Json::array();
    if (diag.empty()) {
        auto model = build_model(p, std::max(lambda_bound(c, p), c.window));
        Json axioms = Json::array();
        for (const auto& s : check_axioms(model, c.window)) (s.rfind("warning:", 0) == 0 ? warn : axioms).push_back(s);
        r["axioms"] = axioms;
        if (!axioms.empty()) stable = false;
    }
    r["warnings"] = warn;
    return {r, diag.empty() && stable ? kOk : kMath};
}

Outcome cmd_point_to_ideal(const RunConfig& c, const std::vector<std::string>& texts) {
    auto p = point_from_json(parse_json(texts[0]));
    auto I = build_ideal_My(p);
    Json r;
    r["ideal"] = ideal_to_json(I);
    r["lambda"] = lambda_to_json(build_lambda(p, lambda_bound(c, p)));
    r["warnings"] = I.warnings;
    return {r, kOk};
}

Outcome cmd_ideal_to_point(const RunConfig&, const std::vector<std::string>& texts) {
    auto I = ideal_from_json(parse_json(texts[0]));
    Json r;
    r["point"] = point_to_json(theta1(I));
    r["warnings"] = I.warnings;
    return {r, kOk};
}

Outcome cmd_roundtrip(const RunConfig& c, const std::vector<std::string>& texts) {
    auto p = point_from_json(parse_json(texts[0]));
    auto I = build_ideal_My(p);
    auto q = theta1(I);
    auto g = gauge_equivalent(p, q);
    const int bound = lambda_bound(c, p);
    bool lam = transition_lambda(I, bound) == build_lambda(p, bound);
    Json r;
    r["recovered"] = point_to_json(q);
    r["gauge_witness"] = g ? matrix_json(*g) : Json(nullptr);
    r["lambda_match"] = lam;
    r["lambda_bound"] = bound;
    r["warnings"] = I.warnings;
    return {r, g && lam ? kOk : kMath};
}

void tuples(int m, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == m) {
        out.push_back(cur);
        return;
    }
    for (int k = 0; k <= total; ++k) {
        cur.push_back(k);
        tuples(m, total - k, cur, out);
        cur.pop_back();
    }
}

Ctx context_of(const RunConfig& c) {
    if (c.m < 1) throw ParseError("m must be >= 1");
    std::vector<CycScalar> tau;
    for (const auto& t : c.tau) tau.push_back(scalar_from_json(Json(t), c.m));
    if (tau.empty()) tau.assign(c.m, CycScalar(Rational(1), c.m));
    if (static_cast<int>(tau.size()) != c.m) throw ParseError("tau needs m entries");
    return make_context(c.m, tau);
}

Outcome cmd_sample(const RunConfig& c) {
    auto ctx = context_of(c);
    if (static_cast<int>(c.dims.size()) != c.m) throw ParseError("dims needs m entries");
    Json r;
    r["point"] = point_to_json(random_point(ctx, c.n, c.dims, c.seed));
    return {r, kOk};
}

Outcome cmd_dim_table(const RunConfig& c) {
    if (c.max_n < 0) throw ParseError("max-n must be >= 0");
    auto ctx = context_of(c);
    std::vector<std::vector<int>> all;
    std::vector<int> cur;
    tuples(c.m, c.max_n, cur, all);
    Json rows = Json::array();
    bool ok = true;
    for (int n = 0; n < c.m; ++n)
        for (const auto& d : all) {
            Json row;
            row["n"] = n;
            row["dims"] = d;
            const long e = expected_dimension(c.m, n, d);
            row["expected_dimension"] = e;
            row["cyclic_dimension"] = cyclic_dimension(c.m, n, d);
            try {
                auto p = random_point(ctx, n, d, c.seed);
                long t = tangent_dimension(p);
                row["status"] = "nonempty";
                row["tangent_dimension"] = t;
                row["agrees"] = t == e;
                ok = ok && t == e;
            } catch (const GenerationError& err) {
                row["status"] = "empty";
                row["note"] = err.what();
                // an empty stratum should have a negative count
                ok = ok && e < 0;
            }
            rows.push_back(row);
        }
    Json r;
    r["m"] = c.m;
    r["tau"] = context_to_json(*ctx)["tau"];
    r["generic"] = is_generic(*ctx);
    r["rows"] = rows;
    return {r, ok ? kOk : kMath};
}

Outcome cmd_orbit(const RunConfig&, const std::vector<std::string>& texts) {
    auto p = point_from_json(parse_json(texts[0]));
    auto s = automorphism_from_json(parse_json(texts[1]), p.ctx);
    auto q = act_on_point(s, p);
    bool eq = equivariance_check(s, p);
    Json r;
    r["automorphism"] = s.str();
    r["point"] = point_to_json(q);
    r["equivariant"] = eq;
    r["class"] = class_of_ideal(build_ideal_My(q)).str();
    return {r, eq ? kOk : kMath};
}

Outcome cmd_selfcheck(const RunConfig& c) {
    acceptance::SuiteConfig sc;
    sc.seed = c.seed;
    sc.jobs = c.jobs;
    Json rows = Json::array();
    bool ok = true;
    for (const auto& res : acceptance::run_suite(sc)) {
        // timings go to stderr only, so the JSON stays reproducible
        std::cerr << acceptance::format_line(res) << '\n';
        Json row;
        row["criterion"] = res.id;
        row["name"] = res.name;
        row["pass"] = res.pass;
        row["cases"] = res.cases;
        row["failures"] = res.failures;
        row["detail"] = res.detail;
        rows.push_back(row);
        ok = ok && res.pass;
    }
    Json r;
    r["criteria"] = rows;
    r["pass"] = ok;
    return {r, ok ? kOk : kMath};
}

Json error_json(const std::string& kind, const std::string& what) {
    Json e;
    e["error"] = kind;
    e["message"] = what;
    return e;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kq: ideals of the quiver algebra and their Nakajima data"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    app.fallthrough();  // global flags may follow the subcommand
    RunConfig c;
    bool json_flag = false;
    app.add_option("--seed", c.seed, "random seed")->capture_default_str();
    app.add_option("--window", c.window, "basis window for axiom checks")->capture_default_str();
    app.add_option("--bound", c.bound, "lambda bound (default 2N + 4)");
    app.add_option("--jobs", c.jobs, "threads for selfcheck")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_flag("--json", json_flag, "JSON output (the only format)");
    app.add_flag("--pretty", c.pretty, "indent JSON");
    app.add_option("-o,--output", c.output, "write the result here instead of stdout");

    auto one_input = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->add_option("input", c.inputs, "input file")->required()->expected(1)->check(CLI::ExistingFile);
        return s;
    };
    one_input("validate", "check the moment map, stability and the DG axioms of a point");
    one_input("point-to-ideal", "the ideal M_y of a point, with its lambda table");
    one_input("ideal-to-point", "recover the point from an ideal");
    one_input("roundtrip", "point -> ideal -> point, with a gauge witness");
    auto* dt = app.add_subcommand("dim-table", "dimensions of strata for all dims with sum <= max-n");
    dt->add_option("--m", c.m, "group order")->required();
    dt->add_option("--max-n", c.max_n, "largest dim V")->required();
    dt->add_option("--tau", c.tau, "tau entries (default all 1)")->delimiter(',');
    auto* orbit = app.add_subcommand("orbit", "act on a point by an automorphism and check equivariance");
    std::string orbit_point, orbit_sigma;
    orbit->add_option("point", orbit_point, "point file")->required()->check(CLI::ExistingFile);
    orbit->add_option("automorphism", orbit_sigma, "automorphism file")->required()->check(CLI::ExistingFile);
    auto* smp = app.add_subcommand("sample", "a random stable point with the given data (seeded)");
    smp->add_option("--m", c.m, "group order")->required();
    smp->add_option("--n", c.n, "framing vertex")->required();
    smp->add_option("--dims", c.dims, "dims of V_0, ..., V_{m-1}")->required()->delimiter(',');
    smp->add_option("--tau", c.tau, "tau entries (default all 1)")->delimiter(',');
    app.add_subcommand("selfcheck", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }
    c.command = app.get_subcommands().front()->get_name();
    if (c.command == "orbit") c.inputs = {orbit_point, orbit_sigma};

    std::vector<std::string> texts;
    Outcome out;
    try {
        for (const auto& path : c.inputs) texts.push_back(read_file(path));
        if (c.command == "validate") out = cmd_validate(c, texts);
        else if (c.command == "point-to-ideal") out = cmd_point_to_ideal(c, texts);
        else if (c.command == "ideal-to-point") out = cmd_ideal_to_point(c, texts);
        else if (c.command == "roundtrip") out = cmd_roundtrip(c, texts);
        else if (c.command == "dim-table") out = cmd_dim_table(c);
        else if (c.command == "orbit") out = cmd_orbit(c, texts);
        else if (c.command == "sample") out = cmd_sample(c);
        else out = cmd_selfcheck(c);
    } catch (const ParseError& e) {
        out = {error_json(e.kind(), e.what()), kConfig};
    } catch (const NotInFamilyError& e) {
        out = {error_json(e.kind(), e.what()), kOutOfFamily};
    } catch (const NotDimOneFamilyError& e) {
        out = {error_json(e.kind(), e.what()), kOutOfFamily};
    } catch (const WindowError& e) {
        out = {error_json(e.kind(), e.what()), kWindow};
    } catch (const BoundError& e) {
        out = {error_json(e.kind(), e.what()), kWindow};
    } catch (const Error& e) {
        out = {error_json(e.kind(), e.what()), kMath};
    } catch (const std::exception& e) {
        out = {error_json("InternalError", e.what()), kMath};
    }

    std::string text = envelope(c, texts, out.result).dump(c.pretty ? 2 : -1) + "\n";
    if (c.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.output, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write " << c.output << "\n";
            return kConfig;
        }
        f << text;
    }
    if (out.code != kOk && out.result.contains("error"))
        std::cerr << out.result["error"].get<std::string>() << ": " << out.result["message"].get<std::string>() << "\n";
    return out.code;
}
