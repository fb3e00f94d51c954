#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace testutil {

struct CmdResult {
    int exit_code;
    std::string output; // combined stdout+stderr
};

inline CmdResult run_cmd(const std::string& cmd) {
    const std::string capture = std::string(std::tmpnam(nullptr)) + ".cap";
    const int raw = std::system((cmd + " > " + capture + " 2>&1").c_str());
    std::ifstream in(capture, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(capture.c_str());
    int code = -1;
    if (raw != -1) code = WEXITSTATUS(raw);
    return {code, ss.str()};
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string temp_path(const std::string& suffix) {
    return std::string(std::tmpnam(nullptr)) + suffix;
}

} // namespace testutil
