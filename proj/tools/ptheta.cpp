#include "ptheta/cli.hpp"

int main(int argc, char** argv) { return ptheta::cli::run(argc, argv); }
