// Command line entry point; subcommands are registered in main().
#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"parallel sliding-square reconfiguration toolkit"};
    app.require_subcommand(0, 1);
    CLI11_PARSE(app, argc, argv);
    std::cout << app.help();
    return 0;
}
