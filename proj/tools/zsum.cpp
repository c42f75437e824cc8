#include "zsum/cli.hpp"

int main(int argc, char** argv) {
    return zsum::cli::run(argc, argv);
}
