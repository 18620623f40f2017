#include <iostream>
#include <string>
#include <vector>

#include "totient_ratio/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    bool as_json = false;
    const auto result = totient_ratio::cli::run(args, &as_json);
    auto& stream = result.exit_code == 2 ? std::cerr : std::cout;
    stream << result.rendered(as_json);
    return result.exit_code;
}
