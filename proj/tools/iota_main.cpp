#include "iota/cli.hpp"

int main(int argc, char** argv) {
    return iota::run_cli(argc, argv);
}
