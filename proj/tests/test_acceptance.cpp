// Acceptance suite: one pass/fail line per criterion, nonzero exit on
// any failure.  The same checks back the CLI's `verify` subcommand.

#include <iostream>

#include "cvswap/verify.hpp"

int main() {
    return cvswap::verify::run_verification(std::cout) ? 0 : 1;
}
