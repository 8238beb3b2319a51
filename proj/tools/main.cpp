#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto result = ncstree::cli::run(args);
    if (!result.help.empty()) {
        std::cout << result.help;
        return 0;
    }
    if (result.text_view) {
        std::cout << result.text();
    } else {
        std::cout << result.document().dump(2) << "\n";
    }
    return result.exit_code;
}
