#pragma once

#include <stdexcept>
#include <string>

namespace e2m {

// Base class for all recoverable errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

enum class SpaceTag { Wasserstein1d, Network, SpdPower, SpdBw };

inline std::string to_string(SpaceTag tag) {
    switch (tag) {
        case SpaceTag::Wasserstein1d: return "wasserstein1d";
        case SpaceTag::Network: return "network";
        case SpaceTag::SpdPower: return "spd-power";
        case SpaceTag::SpdBw: return "spd-bw";
    }
    throw Error("invalid SpaceTag");
}

inline SpaceTag parse_space_tag(const std::string& s) {
    if (s == "wasserstein1d" || s == "dist" || s == "distribution") return SpaceTag::Wasserstein1d;
    if (s == "network") return SpaceTag::Network;
    if (s == "spd-power") return SpaceTag::SpdPower;
    if (s == "spd-bw") return SpaceTag::SpdBw;
    throw ValidationError("unknown space tag: " + s);
}

}  // namespace e2m
