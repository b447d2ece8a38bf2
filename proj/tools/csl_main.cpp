// csl: chromatic sumset lab command line front end.
#include <atomic>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "csl/config.hpp"
#include "csl/io.hpp"
#include "csl/oracle.hpp"
#include "csl/sumset.hpp"

namespace {

using namespace csl;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitVerifyFailed = 4;
constexpr int kExitThreshold = 5;
constexpr int kExitCapacity = 6;

int exit_code_for(const error& e) {
    switch (e.kind()) {
        case errc::structural:
        case errc::parse: return kExitUsage;
        case errc::unsupported: return kExitUnsupported;
        case errc::invalid_witness: return kExitVerifyFailed;
        case errc::threshold:
        case errc::not_ready: return kExitThreshold;
        case errc::capacity: return kExitCapacity;
    }
    return kExitUsage;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoll(item));
        } catch (...) {
            fail(errc::parse, "expected a comma-separated integer list, got: " + text);
        }
    }
    if (out.empty()) fail(errc::parse, "expected a nonempty integer list");
    return out;
}

Window parse_window(const AmbientGroup& g, const std::string& text) {
    std::vector<std::array<std::int64_t, 2>> bounds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            fail(errc::parse, "window ranges look like lo:hi, got: " + item);
        try {
            bounds.push_back({std::stoll(item.substr(0, colon)), std::stoll(item.substr(colon + 1))});
        } catch (...) {
            fail(errc::parse, "window ranges look like lo:hi, got: " + item);
        }
    }
    return make_window(g, std::move(bounds));
}

void emit(const std::string& output_path, const std::string& content) {
    if (output_path.empty())
        std::cout << content << "\n";
    else
        io::write_text_file(output_path, content + "\n");
}

HVector h_for_tuple(const ColorTuple& t, const std::string& h_text) {
    HVector h = make_h_vector(parse_int_list(h_text));
    if (h.size() != t.q())
        fail(errc::parse, "--h needs " + std::to_string(t.q()) + " comma-separated entries");
    return h;
}

enum class Method { finite, submonoid, approx_submonoid, finite_plus_monoid, semilinear, inhomogeneous };

Method resolve_auto(const ColorTuple& t) {
    auto all = [&](auto pred) { return std::all_of(t.colors.begin(), t.colors.end(), pred); };
    if (all([](const ColorClass& c) { return std::holds_alternative<TranslatedMonoid>(c); }))
        return Method::submonoid;
    if (all([](const ColorClass& c) { return std::holds_alternative<FinitePlusMonoid>(c); }))
        return Method::finite_plus_monoid;
    if (all([](const ColorClass& c) { return std::holds_alternative<FiniteSet>(c); }))
        return Method::finite;
    if (all([](const ColorClass& c) { return std::holds_alternative<SemilinearSet>(c); }))
        return Method::semilinear;
    fail_structural("tuples mixing structural classes are not covered; pick colors of one kind");
}

Method parse_method(const std::string& name, const ColorTuple& t) {
    if (name == "auto") return resolve_auto(t);
    if (name == "finite") return Method::finite;
    if (name == "submonoid") return Method::submonoid;
    if (name == "approx-submonoid") return Method::approx_submonoid;
    if (name == "finite-plus-monoid") return Method::finite_plus_monoid;
    if (name == "semilinear") return Method::semilinear;
    if (name == "inhomogeneous") return Method::inhomogeneous;
    fail(errc::parse, "unknown method: " + name);
}

struct CoverOptions {
    std::string input, output, h_text, method = "auto", window_text;
    std::int64_t r = 2;
    bool verify = false;
};

CoveringCertificate build_certificate(const io::TupleFile& file, Method method, std::int64_t r,
                                      const HVector& h, const std::optional<Window>& w) {
    const ColorTuple& t = file.tuple;
    switch (method) {
        case Method::finite: {
            if (!tuple_all_finite(t))
                fail_structural("method finite needs all colors finite extensional");
            return chromatic_finite_cover(t, r, h);
        }
        case Method::submonoid: return submonoid_exact_cover(t, r, h);
        case Method::approx_submonoid: {
            if (!file.witnesses)
                fail_structural("method approx-submonoid needs \"witness_sets\" in the tuple file");
            if (!w) fail_unsupported("method approx-submonoid needs --window");
            return approx_submonoid_cover(t, *file.witnesses, r, h, *w);
        }
        case Method::finite_plus_monoid: return finite_plus_monoid_cover(t, r, h);
        case Method::semilinear: return chromatic_semilinear_cover(t, r, h);
        case Method::inhomogeneous: {
            if (!file.inhomogeneous)
                fail_structural("method inhomogeneous needs \"inhomogeneous\" in the tuple file");
            CoveringCertificate base = build_certificate(file, resolve_auto(t), r, h, w);
            VerificationReport base_report = verify_certificate(base, w);
            if (!base_report.pass) fail_structural("base certificate failed verification");
            return inhomogeneous_cover(base, *file.inhomogeneous, r);
        }
    }
    fail_structural("unreachable method");
}

int cmd_sumset(const std::string& input, const std::string& h_text,
               const std::string& window_text, const std::string& output) {
    io::TupleFile file = io::load_tuple_file(input);
    HVector h = h_for_tuple(file.tuple, h_text);
    FiniteSet result;
    if (window_text.empty()) {
        if (!tuple_all_finite(file.tuple))
            fail_unsupported("structured tuples need --window for sumset evaluation");
        result = chromatic_sumset(file.tuple, h);
    } else {
        result = chromatic_sumset_window(file.tuple, h, parse_window(file.tuple.ambient, window_text));
    }
    emit(output, io::elements_to_json(file.tuple.ambient, result.elements).dump());
    return kExitOk;
}

int cmd_cover(const CoverOptions& opt) {
    io::TupleFile file = io::load_tuple_file(opt.input);
    HVector h = h_for_tuple(file.tuple, opt.h_text);
    std::optional<Window> w;
    if (!opt.window_text.empty()) w = parse_window(file.tuple.ambient, opt.window_text);
    Method method = parse_method(opt.method, file.tuple);
    CoveringCertificate cert = build_certificate(file, method, opt.r, h, w);
    bool failed = false;
    if (opt.verify) {
        VerificationReport report = verify_certificate(cert, w);
        failed = !report.pass;
        if (failed && report.counterexample)
            std::cerr << "verification failed at "
                      << element_to_string(file.tuple.ambient, *report.counterexample) << "\n";
    }
    emit(opt.output, io::certificate_to_json(cert).dump(2));
    return failed ? kExitVerifyFailed : kExitOk;
}

int cmd_layers(const std::string& input, const std::string& h_text, std::int64_t thr,
               bool structure, const std::string& output) {
    io::TupleFile file = io::load_tuple_file(input);
    HVector h = h_for_tuple(file.tuple, h_text);
    RepProfile profile = representation_function(file.tuple, h);
    std::vector<std::int64_t> layer;
    for (const auto& [n, cnt] : profile.counts)
        if (cnt >= static_cast<std::uint64_t>(thr)) layer.push_back(n);

    io::json out{{"h", h.entries}, {"t", thr}, {"profile", io::profile_to_json(profile)["counts"]},
                 {"layer", layer}};
    if (structure) {
        FiniteSet layer_set = z_set(layer);
        const std::int64_t height = layer_height(file.tuple, h);
        LayerStructure ls;
        if (!layer.empty()) ls = decompose_layer(layer_set, height);
        ls.threshold = thr;
        ls.H = height;
        io::json sj = io::layer_structure_to_json(ls, h);
        for (auto& [key, value] : sj.items())
            if (key != "h" && key != "t") out[key] = value;
    }
    emit(output, out.dump(2));
    return kExitOk;
}

struct ScanOptions {
    std::string input, output, h_min_text, h_max_text, window_text;
    std::int64_t r = 2;
    std::optional<std::int64_t> thr;
};

std::string method_label(Method m) {
    switch (m) {
        case Method::finite: return "finite";
        case Method::submonoid: return "submonoid";
        case Method::approx_submonoid: return "approx-submonoid";
        case Method::finite_plus_monoid: return "finite-plus-monoid";
        case Method::semilinear: return "semilinear";
        case Method::inhomogeneous: return "inhomogeneous";
    }
    return "finite";
}

std::string scan_row(const io::TupleFile& file, const ScanOptions& opt, const HVector& h,
                     const std::optional<Window>& w) {
    const ColorTuple& t = file.tuple;
    std::ostringstream row;
    for (std::int64_t v : h.entries) row << v << ",";

    std::string method_name = opt.thr ? "layer" : method_label(resolve_auto(t));
    std::string size = "", bound = "", oracle_min = "", status;
    try {
        CoveringCertificate cert =
            opt.thr ? layer_cover_general(t, *opt.thr, opt.r, h)
                    : build_certificate(file, resolve_auto(t), opt.r, h, w);
        VerificationReport report = verify_certificate(cert, w);
        size = std::to_string(cert.cover.size());
        bound = std::to_string(cert.bound);
        status = to_string(cert.status);
        // exact minimum for comparison against the constructive bound
        FiniteSet target, base;
        if (opt.thr) {
            target = threshold_layer(t, h_scaled(h, opt.r), *opt.thr);
            base = threshold_layer(t, h, *opt.thr);
        } else if (w) {
            target = chromatic_sumset_window(t, h_scaled(h, opt.r), *w);
            base = chromatic_sumset_window(t, h, enlarge_window(*w, cert.cover));
        } else {
            target = chromatic_sumset(t, h_scaled(h, opt.r));
            base = chromatic_sumset(t, h);
        }
        if (!target.empty() && !base.empty())
            oracle_min = std::to_string(min_translate_cover(target, base).size());
    } catch (const error& e) {
        if (e.kind() == errc::threshold)
            status = "threshold";
        else if (e.kind() == errc::not_ready)
            status = "not_ready";
        else
            throw;
    }
    row << method_name << "," << size << "," << bound << "," << oracle_min << "," << status;
    return row.str();
}

int cmd_scan(const ScanOptions& opt) {
    io::TupleFile file = io::load_tuple_file(opt.input);
    const std::size_t q = file.tuple.q();
    auto broadcast = [&](const std::string& text, std::int64_t fallback) {
        std::vector<std::int64_t> v =
            text.empty() ? std::vector<std::int64_t>{fallback} : parse_int_list(text);
        if (v.size() == 1) v.assign(q, v[0]);
        if (v.size() != q) fail(errc::parse, "h bounds need 1 or q entries");
        return make_h_vector(std::move(v));
    };
    HVector lo = broadcast(opt.h_min_text, 1);
    HVector hi = broadcast(opt.h_max_text, 0);
    std::optional<Window> w;
    if (!opt.window_text.empty()) w = parse_window(file.tuple.ambient, opt.window_text);

    std::ostringstream header;
    for (std::size_t i = 1; i <= q; ++i) header << "h" << i << ",";
    header << "method,size,bound,oracle_min,status";

    // enumerate the box in ascending lexicographic h order
    std::vector<HVector> points;
    if (h_preceq(lo, hi)) {
        HVector cur = lo;
        for (;;) {
            points.push_back(cur);
            std::size_t i = q;
            while (i-- > 0) {
                if (cur.entries[i] < hi.entries[i]) {
                    ++cur.entries[i];
                    break;
                }
                cur.entries[i] = lo.entries[i];
                if (i == 0) {
                    i = static_cast<std::size_t>(-1);
                    break;
                }
            }
            if (i == static_cast<std::size_t>(-1)) break;
        }
    }

    // rows are independent; compute in parallel, emit in order
    std::vector<std::string> rows(points.size());
    std::vector<std::exception_ptr> errors(points.size());
    std::atomic<std::size_t> next{0};
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(points.size(),
                                                       std::thread::hardware_concurrency()));
    auto work = [&]() {
        for (;;) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= points.size()) return;
            try {
                rows[idx] = scan_row(file, opt, points[idx], w);
            } catch (...) {
                errors[idx] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i + 1 < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    std::ostringstream table;
    table << header.str();
    for (const std::string& row : rows) table << "\n" << row;
    emit(opt.output, table.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chromatic sumset covering lab"};
    app.require_subcommand(1);

    std::string input, output, h_text, window_text, method = "auto";
    std::int64_t r = 2, thr = 1;
    bool verify = false, structure = false;

    auto* sum = app.add_subcommand("sumset", "evaluate h.A, window-truncated when structured");
    sum->add_option("--input", input)->required();
    sum->add_option("--h", h_text)->required();
    sum->add_option("--window", window_text);
    sum->add_option("--output", output);

    auto* cover = app.add_subcommand("cover", "construct (and optionally verify) a covering certificate");
    cover->add_option("--input", input)->required();
    cover->add_option("--r", r)->required();
    cover->add_option("--h", h_text)->required();
    cover->add_option("--method", method);
    cover->add_option("--window", window_text);
    cover->add_flag("--verify", verify);
    cover->add_option("--output", output);

    auto* layers = app.add_subcommand("layers", "representation profile and threshold layer");
    layers->add_option("--input", input)->required();
    layers->add_option("--h", h_text)->required();
    layers->add_option("--t", thr)->required();
    layers->add_flag("--structure", structure);
    layers->add_option("--output", output);

    std::string h_min_text, h_max_text;
    bool scan_has_t = false;
    auto* scan = app.add_subcommand("scan", "tabulate covers over a box of h vectors as CSV");
    scan->add_option("--input", input)->required();
    scan->add_option("--r", r)->required();
    auto* scan_t = scan->add_option("--t", thr);
    scan->add_option("--h-min", h_min_text);
    scan->add_option("--h-max", h_max_text)->required();
    scan->add_option("--window", window_text);
    scan->add_option("--output", output);

    try {
        app.parse(argc, argv);
        scan_has_t = scan_t->count() > 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sum->parsed()) return cmd_sumset(input, h_text, window_text, output);
        if (cover->parsed())
            return cmd_cover({input, output, h_text, method, window_text, r, verify});
        if (layers->parsed()) return cmd_layers(input, h_text, thr, structure, output);
        ScanOptions opt{input, output, h_min_text, h_max_text, window_text, r,
                        scan_has_t ? std::optional<std::int64_t>(thr) : std::nullopt};
        return cmd_scan(opt);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
