#include "credal/cli.hpp"

int main(int argc, char** argv) { return credal::cli::run(argc, argv); }
