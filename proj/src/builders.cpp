#include "bcond/builders.hpp"

#include <random>
#include <string>

namespace bcond {

namespace {

std::vector<double> uniform_row(std::size_t card) {
  return std::vector<double>(card, 1.0 / card);
}

std::vector<std::string> state_labels(int card) {
  std::vector<std::string> out;
  for (int s = 0; s < card; ++s) out.push_back("s" + std::to_string(s));
  return out;
}

}  // namespace

BeliefNetwork make_diamond(const std::vector<double>& root_prior) {
  const int card = static_cast<int>(root_prior.size());
  std::vector<Variable> vars{
      {"A", state_labels(card)},
      {"B", {"s0", "s1"}},
      {"C", {"s0", "s1"}},
      {"D", {"s0", "s1"}},
  };
  std::vector<ConditionalTable> tables(4);
  tables[0] = {0, {}, {root_prior}};
  tables[1] = {1, {0}, std::vector<std::vector<double>>(card, uniform_row(2))};
  tables[2] = {2, {0}, std::vector<std::vector<double>>(card, uniform_row(2))};
  tables[3] = {3, {1, 2}, std::vector<std::vector<double>>(4, uniform_row(2))};
  return BeliefNetwork(std::move(vars), std::move(tables));
}

BeliefNetwork make_diamond_grid(const std::vector<int>& root_cards,
                                std::uint64_t cpt_seed,
                                std::optional<double> root_first_mass) {
  std::mt19937_64 rng(cpt_seed);
  auto random_row = [&](std::size_t card) {
    std::vector<double> row(card);
    double sum = 0.0;
    for (auto& x : row) {
      x = 0.05 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
      sum += x;
    }
    for (auto& x : row) x /= sum;
    return row;
  };
  auto row_for = [&](std::size_t card) {
    return cpt_seed == 0 ? uniform_row(card) : random_row(card);
  };

  int width = 2;
  for (std::size_t x = root_cards.size() ? root_cards.size() - 1 : 0; x >= 100;
       x /= 10) {
    ++width;
  }

  std::vector<Variable> vars;
  std::vector<ConditionalTable> tables;
  for (std::size_t i = 0; i < root_cards.size(); ++i) {
    std::string digits = std::to_string(i);
    const std::string base =
        "d" + std::string(width - digits.size(), '0') + digits;
    const int card = root_cards[i];
    const int root = static_cast<int>(vars.size());

    vars.push_back({base + "a", state_labels(card)});
    vars.push_back({base + "b", {"s0", "s1"}});
    vars.push_back({base + "c", {"s0", "s1"}});
    vars.push_back({base + "d", {"s0", "s1"}});

    std::vector<double> prior;
    if (root_first_mass) {
      prior.assign(card, (1.0 - *root_first_mass) / (card - 1));
      prior[0] = *root_first_mass;
    } else {
      prior = row_for(card);
    }
    tables.push_back({root, {}, {prior}});
    tables.push_back({root + 1, {root},
                      [&] {
                        std::vector<std::vector<double>> rows;
                        for (int r = 0; r < card; ++r) rows.push_back(row_for(2));
                        return rows;
                      }()});
    tables.push_back({root + 2, {root},
                      [&] {
                        std::vector<std::vector<double>> rows;
                        for (int r = 0; r < card; ++r) rows.push_back(row_for(2));
                        return rows;
                      }()});
    tables.push_back({root + 3, {root + 1, root + 2},
                      [&] {
                        std::vector<std::vector<double>> rows;
                        for (int r = 0; r < 4; ++r) rows.push_back(row_for(2));
                        return rows;
                      }()});
  }
  return BeliefNetwork(std::move(vars), std::move(tables));
}

}  // namespace bcond
