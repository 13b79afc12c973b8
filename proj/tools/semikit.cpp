#include "semikit/run.hpp"

int main(int argc, char** argv)
{
  return semikit::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
