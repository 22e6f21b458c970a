#include "cli.hpp"

int main(int argc, char** argv) { return magnomech::cli_main(argc, argv); }
