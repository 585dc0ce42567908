#include "ltnc/cli.hpp"

int main(int argc, char** argv) { return ltnc::cli::run(argc, argv); }
