#include <iostream>

#include "vpent/selftest.hpp"

int main() { return vpent::run_selftest(std::cout) ? 0 : 1; }
