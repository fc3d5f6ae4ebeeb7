#include <charconv>
#include <fstream>
#include <sstream>

#include "pdwm/config.hpp"

namespace pdwm {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Split a bracketed array body by top-level commas.
std::vector<std::string> split_array(const std::string& body) {
    std::vector<std::string> parts;
    int depth = 0;
    bool in_str = false;
    std::string cur;
    for (char c : body) {
        if (in_str) {
            cur.push_back(c);
            if (c == '"') in_str = false;
            continue;
        }
        if (c == '"') {
            in_str = true;
            cur.push_back(c);
        } else if (c == '[') {
            ++depth;
            cur.push_back(c);
        } else if (c == ']') {
            --depth;
            cur.push_back(c);
        } else if (c == ',' && depth == 0) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    const std::string last = trim(cur);
    if (!last.empty()) parts.push_back(last);
    return parts;
}

TomlValue parse_value(const std::string& raw) {
    const std::string v = trim(raw);
    if (v.empty()) throw Error("config: empty value");
    TomlValue out;
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"') throw Error("config: unterminated string: " + v);
        out.kind = TomlValue::Kind::string;
        out.s = v.substr(1, v.size() - 2);
        if (out.s.find('"') != std::string::npos) throw Error("config: embedded quote in string");
        return out;
    }
    if (v == "true" || v == "false") {
        out.kind = TomlValue::Kind::boolean;
        out.b = v == "true";
        return out;
    }
    if (v.front() == '[') {
        if (v.back() != ']') throw Error("config: unterminated array: " + v);
        out.kind = TomlValue::Kind::array;
        for (const auto& part : split_array(v.substr(1, v.size() - 2)))
            out.arr.push_back(parse_value(part));
        return out;
    }
    const bool is_float = v.find_first_of(".eE") != std::string::npos &&
                          v.find("0x") == std::string::npos;
    if (is_float) {
        out.kind = TomlValue::Kind::floating;
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out.f);
        if (ec != std::errc{} || p != v.data() + v.size()) throw Error("config: bad float: " + v);
        return out;
    }
    out.kind = TomlValue::Kind::integer;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out.i);
    if (ec != std::errc{} || p != v.data() + v.size()) throw Error("config: bad integer: " + v);
    return out;
}

std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

std::string fmt_float(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, p);
    // Keep floats recognizable as floats on re-parse.
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::int64_t want_int(const TomlTable& t, const std::string& key, std::int64_t fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (it->second.kind != TomlValue::Kind::integer) throw Error("config: " + key + " must be an integer");
    return it->second.i;
}

double want_number(const TomlTable& t, const std::string& key, double fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (it->second.kind != TomlValue::Kind::integer && it->second.kind != TomlValue::Kind::floating)
        throw Error("config: " + key + " must be a number");
    return it->second.as_number();
}

bool want_bool(const TomlTable& t, const std::string& key, bool fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (it->second.kind != TomlValue::Kind::boolean) throw Error("config: " + key + " must be a boolean");
    return it->second.b;
}

std::string want_string(const TomlTable& t, const std::string& key, const std::string& fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (it->second.kind != TomlValue::Kind::string) throw Error("config: " + key + " must be a string");
    return it->second.s;
}

void reject_unknown(const TomlTable& t, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (const auto& [key, value] : t) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw Error("config: unknown key '" + key + "' in " + where);
    }
}

}  // namespace

TomlDoc toml_parse(const std::string& text) {
    TomlDoc doc;
    TomlTable* current = &doc.root;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.size() >= 4 && line.substr(0, 2) == "[[" && line.substr(line.size() - 2) == "]]") {
            const std::string name = trim(line.substr(2, line.size() - 4));
            if (name.empty()) throw Error("config: empty table-array name");
            doc.arrays[name].emplace_back();
            current = &doc.arrays[name].back();
            continue;
        }
        if (line.front() == '[' && line.back() == ']') {
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty()) throw Error("config: empty section name");
            if (doc.sections.count(name)) throw Error("config: duplicate section [" + name + "]");
            doc.section_order.push_back(name);
            current = &doc.sections[name];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw Error("config: line " + std::to_string(lineno) + " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw Error("config: empty key on line " + std::to_string(lineno));
        if (current->count(key)) throw Error("config: duplicate key '" + key + "'");
        (*current)[key] = parse_value(line.substr(eq + 1));
    }
    return doc;
}

Config config_defaults() { return Config{}; }

Config config_from_toml(const std::string& text) {
    const TomlDoc doc = toml_parse(text);
    Config cfg;

    reject_unknown(doc.root, {"sk_path", "pk_path"}, "top level");
    cfg.sk_path = want_string(doc.root, "sk_path", "");
    cfg.pk_path = want_string(doc.root, "pk_path", "");

    for (const auto& [name, table] : doc.sections) {
        if (name != "pgws" && name != "ref" && name != "attack" && name != "corpus")
            throw Error("config: unknown section [" + name + "]");
    }
    if (!doc.arrays.empty()) throw Error("config: unexpected table array");

    if (auto it = doc.sections.find("pgws"); it != doc.sections.end()) {
        const TomlTable& t = it->second;
        reject_unknown(t,
                       {"capacity_c", "block_size", "qim_step", "repetition_k", "carriers",
                        "prng_seed", "min_width", "min_height"},
                       "[pgws]");
        PgwsParams& p = cfg.rpws.pgws;
        p.capacity_c = static_cast<int>(want_int(t, "capacity_c", p.capacity_c));
        p.block_size = static_cast<int>(want_int(t, "block_size", p.block_size));
        p.qim_step = want_number(t, "qim_step", p.qim_step);
        p.repetition_k = static_cast<int>(want_int(t, "repetition_k", p.repetition_k));
        p.prng_seed = static_cast<std::uint64_t>(want_int(t, "prng_seed", static_cast<std::int64_t>(p.prng_seed)));
        p.min_width = static_cast<int>(want_int(t, "min_width", p.min_width));
        p.min_height = static_cast<int>(want_int(t, "min_height", p.min_height));
        if (auto c = t.find("carriers"); c != t.end()) {
            if (c->second.kind != TomlValue::Kind::array) throw Error("config: carriers must be an array");
            p.carriers.clear();
            for (const auto& pair : c->second.arr) {
                if (pair.kind != TomlValue::Kind::array || pair.arr.size() != 2 ||
                    pair.arr[0].kind != TomlValue::Kind::integer ||
                    pair.arr[1].kind != TomlValue::Kind::integer)
                    throw Error("config: each carrier must be a [u, v] integer pair");
                p.carriers.emplace_back(static_cast<int>(pair.arr[0].i), static_cast<int>(pair.arr[1].i));
            }
        }
    }

    if (auto it = doc.sections.find("ref"); it != doc.sections.end()) {
        reject_unknown(it->second, {"tau"}, "[ref]");
        cfg.rpws.tau = static_cast<int>(want_int(it->second, "tau", cfg.rpws.tau));
    }

    if (auto it = doc.sections.find("attack"); it != doc.sections.end()) {
        const TomlTable& t = it->second;
        reject_unknown(t,
                       {"norms", "epsilon_nums", "steps", "momentum_mu", "triple_seed",
                        "control_baseline", "control_seed"},
                       "[attack]");
        SweepOptions& a = cfg.attack;
        a.steps = static_cast<int>(want_int(t, "steps", a.steps));
        a.momentum_mu = want_number(t, "momentum_mu", a.momentum_mu);
        a.triple_seed = static_cast<std::uint64_t>(want_int(t, "triple_seed", static_cast<std::int64_t>(a.triple_seed)));
        a.control_baseline = want_bool(t, "control_baseline", a.control_baseline);
        a.control_seed = static_cast<std::uint64_t>(want_int(t, "control_seed", static_cast<std::int64_t>(a.control_seed)));
        if (auto n = t.find("norms"); n != t.end()) {
            if (n->second.kind != TomlValue::Kind::array) throw Error("config: norms must be an array");
            a.norms.clear();
            for (const auto& v : n->second.arr) {
                if (v.kind != TomlValue::Kind::string) throw Error("config: norms entries must be strings");
                if (v.s == "linf")
                    a.norms.push_back(AttackNorm::linf);
                else if (v.s == "l1")
                    a.norms.push_back(AttackNorm::l1);
                else
                    throw Error("config: unknown norm '" + v.s + "'");
            }
        }
        if (auto e = t.find("epsilon_nums"); e != t.end()) {
            if (e->second.kind != TomlValue::Kind::array) throw Error("config: epsilon_nums must be an array");
            a.epsilon_nums.clear();
            for (const auto& v : e->second.arr) {
                if (v.kind != TomlValue::Kind::integer) throw Error("config: epsilon_nums entries must be integers");
                a.epsilon_nums.push_back(static_cast<int>(v.i));
            }
        }
    }

    if (auto it = doc.sections.find("corpus"); it != doc.sections.end()) {
        const TomlTable& t = it->second;
        reject_unknown(t, {"seed", "count", "width", "height", "dir"}, "[corpus]");
        cfg.corpus.seed = static_cast<std::uint64_t>(want_int(t, "seed", static_cast<std::int64_t>(cfg.corpus.seed)));
        cfg.corpus.count = static_cast<int>(want_int(t, "count", cfg.corpus.count));
        cfg.corpus.width = static_cast<int>(want_int(t, "width", cfg.corpus.width));
        cfg.corpus.height = static_cast<int>(want_int(t, "height", cfg.corpus.height));
        cfg.corpus_dir = want_string(t, "dir", "");
    }

    return cfg;
}

Config config_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return config_from_toml(ss.str());
}

std::string config_to_toml(const Config& cfg) {
    std::ostringstream out;
    if (!cfg.sk_path.empty()) out << "sk_path = \"" << cfg.sk_path << "\"\n";
    if (!cfg.pk_path.empty()) out << "pk_path = \"" << cfg.pk_path << "\"\n";
    if (!cfg.sk_path.empty() || !cfg.pk_path.empty()) out << "\n";

    const PgwsParams& p = cfg.rpws.pgws;
    out << "[pgws]\n";
    out << "capacity_c = " << p.capacity_c << "\n";
    out << "block_size = " << p.block_size << "\n";
    out << "qim_step = " << fmt_float(p.qim_step) << "\n";
    out << "repetition_k = " << p.repetition_k << "\n";
    out << "carriers = [";
    for (std::size_t i = 0; i < p.carriers.size(); ++i) {
        if (i) out << ", ";
        out << "[" << p.carriers[i].first << ", " << p.carriers[i].second << "]";
    }
    out << "]\n";
    out << "prng_seed = " << p.prng_seed << "\n";
    out << "min_width = " << p.min_width << "\n";
    out << "min_height = " << p.min_height << "\n\n";

    out << "[ref]\n";
    out << "tau = " << cfg.rpws.tau << "\n\n";

    const SweepOptions& a = cfg.attack;
    out << "[attack]\n";
    out << "norms = [";
    for (std::size_t i = 0; i < a.norms.size(); ++i) {
        if (i) out << ", ";
        out << '"' << norm_name(a.norms[i]) << '"';
    }
    out << "]\n";
    out << "epsilon_nums = [";
    for (std::size_t i = 0; i < a.epsilon_nums.size(); ++i) {
        if (i) out << ", ";
        out << a.epsilon_nums[i];
    }
    out << "]\n";
    out << "steps = " << a.steps << "\n";
    out << "momentum_mu = " << fmt_float(a.momentum_mu) << "\n";
    out << "triple_seed = " << a.triple_seed << "\n";
    out << "control_baseline = " << (a.control_baseline ? "true" : "false") << "\n";
    out << "control_seed = " << a.control_seed << "\n\n";

    out << "[corpus]\n";
    out << "seed = " << cfg.corpus.seed << "\n";
    out << "count = " << cfg.corpus.count << "\n";
    out << "width = " << cfg.corpus.width << "\n";
    out << "height = " << cfg.corpus.height << "\n";
    if (!cfg.corpus_dir.empty()) out << "dir = \"" << cfg.corpus_dir << "\"\n";
    return out.str();
}

std::string suite_to_toml(const std::vector<TransformSpec>& suite) {
    std::ostringstream out;
    for (const auto& s : suite) {
        out << "[[transform]]\n";
        switch (s.kind) {
            case TransformKind::identity:
                out << "kind = \"identity\"\n";
                break;
            case TransformKind::jpeg:
                out << "kind = \"jpeg\"\nquality = " << s.quality << "\n";
                break;
            case TransformKind::gaussian_noise:
                out << "kind = \"gaussian_noise\"\nsigma = " << fmt_float(s.sigma)
                    << "\nseed = " << s.seed << "\n";
                break;
            case TransformKind::resize:
                out << "kind = \"resize\"\nscale = " << fmt_float(s.scale) << "\n";
                break;
            case TransformKind::center_crop:
                out << "kind = \"center_crop\"\nkeep = " << fmt_float(s.keep) << "\n";
                break;
            case TransformKind::brightness:
                out << "kind = \"brightness\"\ndelta = " << fmt_float(s.delta) << "\n";
                break;
        }
        out << "\n";
    }
    return out.str();
}

std::vector<TransformSpec> suite_from_toml(const std::string& text) {
    const TomlDoc doc = toml_parse(text);
    if (!doc.root.empty() || !doc.sections.empty())
        throw Error("suite: expected only [[transform]] tables");
    std::vector<TransformSpec> suite;
    auto it = doc.arrays.find("transform");
    if (it == doc.arrays.end()) return suite;
    for (const TomlTable& t : it->second) {
        const std::string kind = want_string(t, "kind", "");
        if (kind == "identity") {
            reject_unknown(t, {"kind"}, "[[transform]] identity");
            suite.push_back(TransformSpec::identity());
        } else if (kind == "jpeg") {
            reject_unknown(t, {"kind", "quality"}, "[[transform]] jpeg");
            suite.push_back(TransformSpec::jpeg(static_cast<int>(want_int(t, "quality", 90))));
        } else if (kind == "gaussian_noise") {
            reject_unknown(t, {"kind", "sigma", "seed"}, "[[transform]] gaussian_noise");
            suite.push_back(TransformSpec::gaussian_noise(
                want_number(t, "sigma", 1.0), static_cast<std::uint64_t>(want_int(t, "seed", 1))));
        } else if (kind == "resize") {
            reject_unknown(t, {"kind", "scale"}, "[[transform]] resize");
            suite.push_back(TransformSpec::resize(want_number(t, "scale", 1.0)));
        } else if (kind == "center_crop") {
            reject_unknown(t, {"kind", "keep"}, "[[transform]] center_crop");
            suite.push_back(TransformSpec::center_crop(want_number(t, "keep", 1.0)));
        } else if (kind == "brightness") {
            reject_unknown(t, {"kind", "delta"}, "[[transform]] brightness");
            suite.push_back(TransformSpec::brightness(want_number(t, "delta", 0.0)));
        } else {
            throw Error("suite: unknown transform kind '" + kind + "'");
        }
    }
    return suite;
}

}  // namespace pdwm
