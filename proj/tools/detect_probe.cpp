#include <cstdio>

#include "pdwm/rpws.hpp"

// Minimal detector built from a curated source list that excludes every
// signing translation unit. Linking this binary is itself the proof that
// detection requires no secret-key code; it is also a usable tool.

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: detect_probe <public-key-file> <image.png>\n");
        return 2;
    }
    try {
        const pdwm::PublicKey pk = pdwm::load_public_key(argv[1]);
        const pdwm::Image img = pdwm::load_png(argv[2]);
        const pdwm::DetectionReport rep = pdwm::Rpws().detect(pk, img);
        std::printf("%s\n", rep.to_json_line().c_str());
        return rep.overall ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
