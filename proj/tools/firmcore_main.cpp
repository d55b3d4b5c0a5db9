#include <iostream>
#include <variant>

#include "firmcore/cli.hpp"

int main(int argc, char** argv) {
    auto parsed = firmcore::cli::parse_command_line(argc, argv, std::cout, std::cerr);
    if (const int* code = std::get_if<int>(&parsed)) return *code;
    return firmcore::cli::run(std::get<firmcore::cli::RunConfig>(parsed), std::cout, std::cerr);
}
