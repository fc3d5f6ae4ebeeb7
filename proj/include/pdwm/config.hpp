#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pdwm/eval.hpp"
#include "pdwm/image.hpp"
#include "pdwm/rpws.hpp"
#include "pdwm/transforms.hpp"

// Run configuration: a small TOML subset (sections, scalars, arrays of
// ints/floats/strings, one nesting level) with strict unknown-key checking.

namespace pdwm {

struct TomlValue {
    enum class Kind { integer, floating, boolean, string, array };
    Kind kind = Kind::integer;
    std::int64_t i = 0;
    double f = 0.0;
    bool b = false;
    std::string s;
    std::vector<TomlValue> arr;

    double as_number() const { return kind == Kind::integer ? static_cast<double>(i) : f; }
};

using TomlTable = std::map<std::string, TomlValue>;

struct TomlDoc {
    TomlTable root;
    std::map<std::string, TomlTable> sections;               // [name]
    std::map<std::string, std::vector<TomlTable>> arrays;    // [[name]]
    std::vector<std::string> section_order;
};

TomlDoc toml_parse(const std::string& text);

struct Config {
    std::string sk_path;  // root-level key paths
    std::string pk_path;
    RpwsParams rpws;      // [pgws] + [ref].tau
    SweepOptions attack;  // [attack]
    CorpusSpec corpus;    // [corpus]
    std::string corpus_dir;  // [corpus].dir overrides synthetic when set
};

Config config_defaults();
Config config_from_toml(const std::string& text);
Config config_from_file(const std::string& path);
std::string config_to_toml(const Config& cfg);

// TransformSpec <-> TOML table (used by the suite dump).
std::string suite_to_toml(const std::vector<TransformSpec>& suite);
std::vector<TransformSpec> suite_from_toml(const std::string& text);

}  // namespace pdwm
