// SPDX-License-Identifier: Apache-2.0
#include "prelog_lab/cli.hpp"

int main(int argc, char** argv) { return prelog::cli::main(argc, argv); }
