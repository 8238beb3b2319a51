#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace ncstree::cli {

struct CommandResult {
    /// "ok" or "fail"
    std::string status = "ok";
    nlohmann::json payload = nlohmann::json::object();
    double timing_ms = 0;
    /// 0 ok, 1 verification failure, 2 usage or parse error
    int exit_code = 0;
    /// Help text requested with --help; printed instead of the document.
    std::string help;
    bool text_view = false;

    nlohmann::json document() const;
    /// Plain key/value rendering of the payload.
    std::string text() const;
};

/// Runs one command line (without the program name).
CommandResult run(const std::vector<std::string>& args);

} // namespace ncstree::cli
