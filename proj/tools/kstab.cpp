#include "kstab/cli.hpp"

int main(int argc, char** argv) { return kstab::cli_main(argc, argv); }
