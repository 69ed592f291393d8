#include <iostream>

#include "vfbns/cli.hpp"

int main(int argc, char** argv) { return vfbns::dispatch(argc, argv, std::cout, std::cerr); }
