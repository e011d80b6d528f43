// SPDX-License-Identifier: Apache-2.0

#include "qtr/cli.hpp"

int main(int argc, char **argv) { return qtr::cli::main_entry(argc, argv); }
