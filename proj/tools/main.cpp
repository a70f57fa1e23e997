#include "qcross/cli.hpp"

int main(int argc, char** argv) { return qcross::main_entry(argc, argv); }
