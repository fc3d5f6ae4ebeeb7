#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "pdwm/config.hpp"
#include "pdwm/eval.hpp"
#include "pdwm/kern/kernels.hpp"
#include "pdwm/lsb.hpp"
#include "pdwm/rng.hpp"
#include "pdwm/rpws.hpp"

// pdwmark: keygen | watermark | detect | eval
// Exit codes: 0 success/detected, 1 not detected, 2 usage or I/O error.

namespace fs = std::filesystem;
using namespace pdwm;

namespace {

constexpr const char* kVersion = "pdwmark 0.1.0";

struct CorpusSource {
    bool synthetic = true;
    CorpusSpec spec;
    std::string dir;
};

// "synthetic:seed:count:size" or a directory path.
CorpusSource parse_corpus_arg(const std::string& arg) {
    CorpusSource src;
    if (arg.rfind("synthetic:", 0) == 0) {
        unsigned long long seed = 0, count = 0, size = 0;
        if (std::sscanf(arg.c_str(), "synthetic:%llu:%llu:%llu", &seed, &count, &size) != 3 ||
            count == 0 || size == 0)
            throw Error("corpus: expected synthetic:<seed>:<count>:<size>");
        src.spec.seed = seed;
        src.spec.count = static_cast<int>(count);
        src.spec.width = src.spec.height = static_cast<int>(size);
        return src;
    }
    src.synthetic = false;
    src.dir = arg;
    return src;
}

// Directory convention: <id>.png are bases, <id>__<label>.png positives.
std::vector<Image> load_corpus_dir(const std::string& dir) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file() || e.path().extension() != ".png") continue;
        const std::string stem = e.path().stem().string();
        if (stem.find("__") != std::string::npos) continue;
        names.push_back(e.path().string());
    }
    std::sort(names.begin(), names.end());
    if (names.empty()) throw Error("corpus: no base .png files in " + dir);
    std::vector<Image> corpus;
    corpus.reserve(names.size());
    for (const auto& n : names) corpus.push_back(load_png(n));
    return corpus;
}

std::vector<Image> resolve_corpus(const CorpusSource& src) {
    return src.synthetic ? generate_corpus(src.spec) : load_corpus_dir(src.dir);
}

// Fixed keypair per corpus seed so eval runs are reproducible without key
// files on disk.
SecretKey eval_secret_key(std::uint64_t corpus_seed) {
    SecretKey sk;
    std::uint64_t x = corpus_seed ^ 0x70647761726b6579ull;  // domain separation
    for (int w = 0; w < 4; ++w) {
        const std::uint64_t v = Rng::splitmix64(x);
        for (int b = 0; b < 8; ++b) sk.seed[w * 8 + b] = std::uint8_t(v >> (56 - 8 * b));
    }
    return sk;
}

void echo_header(std::ostream& out, const Config& cfg) {
    out << "# " << kVersion << "\n";
    std::istringstream lines(config_to_toml(cfg));
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
}

void require_new_file(const std::string& path, bool force) {
    if (!force && fs::exists(path))
        throw Error(path + " exists; pass --force to overwrite");
}

int cmd_keygen(const std::string& prefix, bool force) {
    const std::string sk_path = prefix + ".sk", pk_path = prefix + ".pk";
    require_new_file(sk_path, force);
    require_new_file(pk_path, force);
    const auto [sk, pk] = sig_generate(128);
    save_secret_key(sk, sk_path);
    save_public_key(pk, pk_path);
    std::cout << "wrote " << sk_path << " and " << pk_path << "\n";
    return 0;
}

int cmd_watermark(const std::string& scheme, const Config& cfg, const std::string& sk_path,
                  const std::string& in_path, const std::string& out_path, bool force) {
    if (sk_path.empty()) throw Error("watermark: --sk (or sk_path in config) required");
    require_new_file(out_path, force);
    const SecretKey sk = load_secret_key(sk_path);
    const Image img = load_png(in_path);
    Image out;
    if (scheme == "lsb") {
        out = lsb_watermark(sk, img);
    } else if (scheme == "rpws") {
        out = Rpws(cfg.rpws).watermark(sk, img);
    } else {
        throw Error("watermark: unknown scheme '" + scheme + "'");
    }
    save_png(out, out_path);
    std::printf("psnr_db=%.4f\n", psnr(img, out));
    return 0;
}

int cmd_detect(const std::string& scheme, const Config& cfg, const std::string& pk_path,
               const std::string& in_path) {
    if (pk_path.empty()) throw Error("detect: --pk (or pk_path in config) required");
    const PublicKey pk = load_public_key(pk_path);
    const Image img = load_png(in_path);
    if (scheme == "lsb") {
        const bool hit = lsb_detect(pk, img);
        std::cout << (hit ? "true" : "false") << "\n";
        return hit ? 0 : 1;
    }
    if (scheme == "rpws") {
        const DetectionReport rep = Rpws(cfg.rpws).detect(pk, img);
        std::cout << rep.to_json_line() << "\n";
        return rep.overall ? 0 : 1;
    }
    throw Error("detect: unknown scheme '" + scheme + "'");
}

int eval_robustness(const Config& cfg, const std::vector<Image>& corpus, std::ostream& out) {
    const Rpws rpws(cfg.rpws);
    const SecretKey sk =
        cfg.sk_path.empty() ? eval_secret_key(cfg.corpus.seed) : load_secret_key(cfg.sk_path);
    const PublicKey pk = derive_public(sk);
    const auto suite = standard_suite();

    std::vector<Image> marked;
    marked.reserve(corpus.size());
    for (const auto& img : corpus) marked.push_back(rpws.watermark(sk, img));

    echo_header(out, cfg);
    out << "transform,detected,total,rate\n";
    char buf[160];
    for (const auto& spec : suite) {
        int hits = 0;
        for (const auto& img : marked)
            if (rpws.detect(pk, apply(spec, img)).overall) ++hits;
        std::snprintf(buf, sizeof buf, "%s,%d,%zu,%.6f", spec.label().c_str(), hits, marked.size(),
                      static_cast<double>(hits) / marked.size());
        out << buf << "\n";
    }
    return 0;
}

int eval_clean_roc(const Config& cfg, const std::vector<Image>& corpus, std::ostream& out,
                   std::ostream* jsonl) {
    const auto suite = standard_suite();
    const auto plan = plan_triples(static_cast<int>(corpus.size()), suite, cfg.attack.triple_seed);

    std::map<std::string, std::vector<std::pair<double, int>>> by_transform;
    std::vector<std::pair<double, int>> all;
    all.reserve(plan.size() * 2);
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const EvalTriple t = make_triple(corpus, plan[i]);
        const double ps = triple_positive_score(t), ns = triple_negative_score(t);
        all.emplace_back(ps, 1);
        all.emplace_back(ns, 0);
        by_transform[t.transform].emplace_back(ps, 1);
        by_transform[t.transform].emplace_back(ns, 0);
        if (jsonl) {
            *jsonl << "{\"triple\":" << i << ",\"transform\":\"" << t.transform
                   << "\",\"pos_score\":" << ps << ",\"neg_score\":" << ns << "}\n";
        }
    }

    echo_header(out, cfg);
    out << "scope,positives,negatives,auc\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "overall,%zu,%zu,%.6f", all.size() / 2, all.size() / 2,
                  auc_from_scores(all));
    out << buf << "\n";
    for (const auto& [label, scores] : by_transform) {
        std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.6f", label.c_str(), scores.size() / 2,
                      scores.size() / 2, auc_from_scores(scores));
        out << buf << "\n";
    }
    return 0;
}

int eval_attack_mode(const Config& cfg, const std::vector<Image>& corpus, const std::string& out_path,
                     bool stable, std::ostream* jsonl) {
    SweepOptions opt = cfg.attack;
    opt.jsonl = jsonl;
    const auto rows = attack_sweep(corpus, standard_suite(), opt);

    SweepOptions control = cfg.attack;
    control.control_baseline = true;
    const auto control_rows = attack_sweep(corpus, standard_suite(), control);

    auto write_rows = [&cfg, stable](const std::string& path, const std::vector<SweepRow>& r) {
        std::ofstream f(path, std::ios::trunc);
        if (!f) throw Error("eval: cannot write " + path);
        echo_header(f, cfg);
        report_csv(r, f, stable);
    };
    write_rows(out_path, rows);

    fs::path control_path(out_path);
    control_path.replace_extension("");
    write_rows(control_path.string() + "_control.csv", control_rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kVersion) +
                 " — unforgeable, publicly-detectable image watermarking toolkit"};
    app.require_subcommand(0, 1);

    std::string backend;
    app.add_option("--backend", backend, "force kernel backend (scalar|avx2)");

    std::string config_path;
    app.add_option("--config", config_path, "TOML config file")->check(CLI::ExistingFile);

    auto* kg = app.add_subcommand("keygen", "generate a signing keypair");
    std::string kg_prefix;
    bool kg_force = false;
    kg->add_option("--out", kg_prefix, "output path prefix (<prefix>.sk/.pk)")->required();
    kg->add_flag("--force", kg_force, "overwrite existing key files");

    auto* wm = app.add_subcommand("watermark", "embed a watermark into a PNG");
    std::string wm_scheme = "rpws", wm_sk, wm_in, wm_out;
    bool wm_force = false;
    wm->add_option("--scheme", wm_scheme, "lsb | rpws (default rpws)");
    wm->add_option("--sk", wm_sk, "secret key file");
    wm->add_option("input", wm_in, "input PNG")->required()->check(CLI::ExistingFile);
    wm->add_option("--out", wm_out, "output PNG")->required();
    wm->add_flag("--force", wm_force, "overwrite existing output");

    auto* dt = app.add_subcommand("detect", "run public detection on a PNG");
    std::string dt_scheme = "rpws", dt_pk, dt_in;
    dt->add_option("--scheme", dt_scheme, "lsb | rpws (default rpws)");
    dt->add_option("--pk", dt_pk, "public key file");
    dt->add_option("input", dt_in, "input PNG")->required()->check(CLI::ExistingFile);

    auto* ev = app.add_subcommand("eval", "robustness / ROC / attack benchmarks");
    std::string ev_mode = "robustness", ev_corpus = "synthetic:1:100:256", ev_out = "report.csv";
    std::string ev_jsonl, ev_dump_suite;
    bool ev_stable = false, ev_force = false;
    ev->add_option("--mode", ev_mode, "robustness | clean-roc | attack");
    ev->add_option("--corpus", ev_corpus, "directory or synthetic:<seed>:<count>:<size>");
    ev->add_option("--out", ev_out, "output CSV path");
    ev->add_option("--jsonl", ev_jsonl, "per-triple JSONL debug dump");
    ev->add_option("--dump-suite", ev_dump_suite, "write the standard transform suite as TOML and exit");
    ev->add_flag("--stable-output", ev_stable, "zero the timing column for byte-identical reruns");
    ev->add_flag("--force", ev_force, "overwrite existing outputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (!backend.empty() && !kern::select_backend(backend))
            throw Error("unknown or unavailable backend '" + backend + "'");

        Config cfg = config_path.empty() ? config_defaults() : config_from_file(config_path);

        if (kg->parsed()) return cmd_keygen(kg_prefix, kg_force);

        if (wm->parsed())
            return cmd_watermark(wm_scheme, cfg, wm_sk.empty() ? cfg.sk_path : wm_sk, wm_in, wm_out,
                                 wm_force);

        if (dt->parsed()) return cmd_detect(dt_scheme, cfg, dt_pk.empty() ? cfg.pk_path : dt_pk, dt_in);

        if (ev->parsed()) {
            if (!ev_dump_suite.empty()) {
                require_new_file(ev_dump_suite, ev_force);
                std::ofstream f(ev_dump_suite, std::ios::trunc);
                if (!f) throw Error("eval: cannot write " + ev_dump_suite);
                f << suite_to_toml(standard_suite());
                return 0;
            }
            const CorpusSource src = parse_corpus_arg(ev_corpus);
            if (src.synthetic) cfg.corpus = src.spec;
            const auto corpus = resolve_corpus(src);

            std::ofstream jsonl_file;
            std::ostream* jsonl = nullptr;
            if (!ev_jsonl.empty()) {
                require_new_file(ev_jsonl, ev_force);
                jsonl_file.open(ev_jsonl, std::ios::trunc);
                if (!jsonl_file) throw Error("eval: cannot write " + ev_jsonl);
                jsonl = &jsonl_file;
            }

            require_new_file(ev_out, ev_force);
            if (ev_mode == "attack") return eval_attack_mode(cfg, corpus, ev_out, ev_stable, jsonl);

            std::ofstream out(ev_out, std::ios::trunc);
            if (!out) throw Error("eval: cannot write " + ev_out);
            if (ev_mode == "robustness") return eval_robustness(cfg, corpus, out);
            if (ev_mode == "clean-roc") return eval_clean_roc(cfg, corpus, out, jsonl);
            throw Error("eval: unknown mode '" + ev_mode + "'");
        }

        std::cout << app.help() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
