#include <iostream>

#include "dkron/acceptance.hpp"

int main() { return dkron::report_acceptance(std::cout) ? 0 : 1; }
