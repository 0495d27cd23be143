#include <iostream>
#include <string>
#include <vector>

#include "netlat/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> words(argv + 1, argv + argc);
  if (words.empty() || words[0] == "--help" || words[0] == "-h") {
    std::cout << "usage: netlat <census|verify|nets|equiv|fixed|thm3|autcheck> "
                 "[--q Q] [--n N] [--m M] [--samples S] [--seed X] [--budget B] "
                 "[--cap C] [--mode exhaustive|sample] [--out FILE] "
                 "[--allow-excluded] [--replay STRING] [--gens KEYS] "
                 "[--pattern P] [--lattice FILE]\n";
    return words.empty() ? netlat::cli::kConfig : netlat::cli::kPass;
  }
  netlat::cli::Report rep;
  try {
    rep = netlat::cli::run(netlat::cli::parse_args(words));
  } catch (const netlat::Error &e) {
    std::cerr << "netlat: " << e.what() << "\n";
    return netlat::cli::kConfig;
  }
  if (rep.body.contains("error"))
    std::cerr << "netlat: " << rep.body["error"].get<std::string>() << "\n";
  std::cout << rep.text();
  return rep.exit_code;
}
