#include "shuffle_merge/cli.hpp"

int main(int argc, char** argv) {
  return shuffle_merge::cli::parse_and_dispatch(argc, argv);
}
