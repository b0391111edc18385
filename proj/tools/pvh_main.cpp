#include "pvh/problem_io.hpp"

int main(int argc, char** argv) { return pvh::run_cli(argc, argv); }
