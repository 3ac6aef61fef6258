// Command-line front end: exact and Monte Carlo evaluation, dominance
// comparisons, the minimax and ladder constructions, the worked games, the
// best-response solver, and plot-data emission. Machine output is CSV on
// stdout; human summaries go to stderr. Exit codes: 0 success, 2 input
// error, 3 capability error, 4 construction failure.

#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bestchoice/core.hpp"
#include "bestchoice/dominance.hpp"
#include "bestchoice/exact.hpp"
#include "bestchoice/games.hpp"
#include "bestchoice/minimax.hpp"
#include "bestchoice/simulate.hpp"
#include "bestchoice/strategy_spec.hpp"

namespace bc = bestchoice;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string trunc3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", std::floor(v * 1000.0) / 1000.0);
    return buf;
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        size_t dots = tok.find("..");
        if (dots != std::string::npos) {
            int a = std::stoi(tok.substr(0, dots));
            int b = std::stoi(tok.substr(dots + 2));
            if (a < 1 || b < a) throw std::invalid_argument("bad range: " + tok);
            for (int n = a; n <= b; ++n) out.push_back(n);
        } else {
            int n = std::stoi(tok);
            if (n < 1) throw std::invalid_argument("n must be >= 1");
            out.push_back(n);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty n list");
    return out;
}

int cmd_eval(const std::string& spec, const std::string& n_list, const std::string& dist_file,
             bool mc, long long trials, uint64_t seed) {
    bc::AnyStrategy strategy = bc::cli::parse_strategy(spec);
    std::vector<int> ns;
    std::optional<bc::SampleSizeDistribution> nu;
    if (!dist_file.empty()) {
        nu = bc::cli::load_distribution(dist_file);
        int top = nu->truncation_length(1e-12);
        for (int n = 1; n <= top; ++n)
            if (nu->weight(n) > 0.0) ns.push_back(n);
    } else {
        ns = parse_n_list(n_list);
    }

    bool exact_ok = !std::holds_alternative<bc::CutoffStrategy>(strategy) ||
                    std::get<bc::CutoffStrategy>(strategy).nonincreasing();
    if (!exact_ok && !mc)
        throw bc::unsupported_strategy(
            "strategy is not exactly evaluable; rerun with --mc");

    std::printf(mc ? "n,win_prob,stderr\n" : "n,win_prob\n");
    double mixture = 0.0;
    for (int n : ns) {
        double p, se = 0.0;
        if (mc) {
            auto est = bc::sim::estimate(bc::sim::to_program(strategy), n, trials, seed);
            p = est.value;
            se = est.std_error;
        } else {
            p = bc::exact::win_prob(strategy, n);
        }
        if (nu) mixture += nu->weight(n) * p;
        if (mc)
            std::printf("%d,%s,%s\n", n, num(p).c_str(), num(se).c_str());
        else
            std::printf("%d,%s\n", n, num(p).c_str());
    }
    if (nu) {
        if (mc)
            std::printf("mixture,%s,\n", num(mixture).c_str());
        else
            std::printf("mixture,%s\n", num(mixture).c_str());
        std::fprintf(stderr, "W(tau,nu) = %s\n", num(mixture).c_str());
    }
    return 0;
}

int cmd_compare(const std::string& spec_a, const std::string& spec_b, const std::string& range,
                const std::string& z_list) {
    bc::AnyStrategy a = bc::cli::parse_strategy(spec_a);
    bc::AnyStrategy b = bc::cli::parse_strategy(spec_b);
    auto ns = parse_n_list(range);
    int n_max = *std::max_element(ns.begin(), ns.end());
    std::set<int> z;
    if (!z_list.empty())
        for (int n : parse_n_list(z_list)) z.insert(n);
    auto verdict = bc::dominance::compare(a, b, n_max, z.empty() ? nullptr : &z);
    std::printf("n,w_a,w_b,diff\n");
    for (int n = 1; n <= n_max; ++n)
        std::printf("%d,%s,%s,%s\n", n, num(bc::exact::win_prob(a, n)).c_str(),
                    num(bc::exact::win_prob(b, n)).c_str(), num(verdict.diffs.at(n)).c_str());
    const char* rel = nullptr;
    switch (verdict.relation) {
        case bc::dominance::Relation::dominates: rel = "a dominates b"; break;
        case bc::dominance::Relation::strongly_dominates_on_Z:
            rel = "a strongly dominates b on Z"; break;
        case bc::dominance::Relation::dominated: rel = "a is dominated by b"; break;
        case bc::dominance::Relation::incomparable: rel = "incomparable"; break;
        case bc::dominance::Relation::equal: rel = "equal"; break;
    }
    std::printf("verdict,%s,,\n", rel);
    std::fprintf(stderr, "%s (asymptotes %s vs %s)\n", rel, num(verdict.asymptote_a).c_str(),
                 num(verdict.asymptote_b).c_str());
    return 0;
}

int cmd_minimax(int steps) {
    auto seq = bc::minimax::general_right_shift(steps);
    const auto& last = seq.back();
    std::fprintf(stderr, "right-shift cutoffs:");
    for (double a : last.strategy.cutoffs()) std::fprintf(stderr, " %s", num(a).c_str());
    std::fprintf(stderr, " | tail 1/e | min w_n = %s\n", num(last.min_w).c_str());
    std::printf("n,w_n,p_1e,w_n_3dec,p_1e_3dec\n");
    for (int n : {4, 5, 6, 7, 8, 9, 10, 15, 20, 25}) {
        double w = bc::exact::win_prob_cutoff(last.strategy, n);
        double p = bc::exact::win_prob_x(n, bc::kInvE);
        std::printf("%d,%s,%s,%s,%s\n", n, num(w).c_str(), num(p).c_str(), trunc3(w).c_str(),
                    trunc3(p).c_str());
    }
    std::printf("cutoffs");
    for (double a : last.strategy.cutoffs()) std::printf(",%s", num(a).c_str());
    std::printf("\n");
    return 0;
}

int cmd_dominate(int n1) {
    auto built = bc::dominance::build_finite_Z_dominator(n1);
    std::fprintf(stderr, "ladder:");
    for (int n : built.plan.ladder) std::fprintf(stderr, " %d", n);
    std::fprintf(stderr, "\nblock cutoffs:");
    for (double c : built.plan.block_cutoffs) std::fprintf(stderr, " %s", num(c).c_str());
    std::fprintf(stderr, "\n");
    std::printf("n,advantage\n");
    for (int n = 1; n <= n1; ++n)
        std::printf("%d,%s\n", n, num(built.advantages[static_cast<size_t>(n)]).c_str());
    return 0;
}

int cmd_game(const std::string& which, double theta) {
    std::printf("key,value\n");
    if (which == "geometric") {
        auto g = bc::games::geometric_optimal_x(theta);
        std::printf("theta,%s\n", num(g.theta).c_str());
        std::printf("x,%s\n", num(g.x).c_str());
        std::printf("numeric_x,%s\n", num(g.numeric_x).c_str());
        std::printf("value,%s\n", num(g.value).c_str());
        std::printf("closed_form_value,%s\n", num(g.closed_form_value).c_str());
        std::printf("value_identity_holds,%d\n", g.value_identity_holds ? 1 : 0);
        return 0;
    }
    bc::games::SaddleReport r = which == "example1" ? bc::games::game_example1_saddle()
                                                    : bc::games::game_example2_saddle();
    std::printf("b_star,%s\n", num(r.b_star).c_str());
    std::printf("p_star,%s\n", num(r.p_star).c_str());
    std::printf("value,%s\n", num(r.value).c_str());
    std::printf("equalizer_check,%s\n", num(r.equalizer_check).c_str());
    std::printf("best_response_threshold,%s\n", num(r.best_response_threshold).c_str());
    std::printf("value_increasing_after_p_star,%d\n", r.monotonic ? 1 : 0);
    return 0;
}

int cmd_bestresponse(const std::string& dist_file, int grid) {
    auto nu = bc::cli::load_distribution(dist_file);
    auto policy = bc::games::best_response(nu, grid);
    std::fprintf(stderr, "value = %s%s\n", num(policy.value).c_str(),
                 policy.accuracy_warning ? " (accuracy warning: grid too coarse)" : "");
    std::printf("k,t_start,t_end\n");
    for (int k = 1; k <= policy.n_bar; ++k)
        for (const auto& [lo, hi] : policy.accept[static_cast<size_t>(k - 1)])
            std::printf("%d,%s,%s\n", k, num(lo).c_str(), num(hi).c_str());
    std::printf("value,%s,\n", num(policy.value).c_str());
    if (policy.accuracy_warning) std::printf("accuracy_warning,1,\n");
    return 0;
}

int cmd_figure(const std::string& what, const std::string& n_list, int grid) {
    if (what != "pnx") throw std::invalid_argument("unknown figure: " + what);
    auto ns = parse_n_list(n_list);
    std::printf("x");
    for (int n : ns) std::printf(",pn_%d", n);
    std::printf(",limit\n");
    for (int i = 0; i < grid; ++i) {
        double x = grid == 1 ? 0.0 : static_cast<double>(i) / (grid - 1);
        std::printf("%s", num(x).c_str());
        for (int n : ns) std::printf(",%s", num(bc::exact::win_prob_x(n, x)).c_str());
        double limit = x > 0.0 && x < 1.0 ? -x * std::log(x) : 0.0;
        std::printf(",%s\n", num(limit).c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"best-choice strategies under random arrivals with unknown sample size"};
    app.require_subcommand(1);

    std::string spec, spec_b, n_list, dist_file, range, z_list, game_which, figure_what = "pnx";
    bool mc = false;
    long long trials = 100000;
    uint64_t seed = 0;
    int steps = 3, n1 = 10, grid = 20000, fig_grid = 101;
    double theta = 1.0;

    auto* eval = app.add_subcommand("eval", "winning probabilities of a strategy");
    eval->add_option("--strategy", spec)->required();
    eval->add_option("--n", n_list);
    eval->add_option("--dist", dist_file);
    eval->add_flag("--mc", mc);
    eval->add_option("--trials", trials);
    eval->add_option("--seed", seed);

    auto* cmp = app.add_subcommand("compare", "dominance verdict between two strategies");
    cmp->add_option("--a", spec)->required();
    cmp->add_option("--b", spec_b)->required();
    cmp->add_option("--n-range", range)->required();
    cmp->add_option("--z", z_list);

    auto* mm = app.add_subcommand("minimax", "right-shift minimax cutoffs and table");
    mm->add_option("--steps", steps);

    auto* dom = app.add_subcommand("dominate", "ladder strategy beating the 1/e-strategy");
    dom->add_option("--u", n1)->required();

    auto* game = app.add_subcommand("game", "saddle points and the geometric-prior game");
    game->add_option("which", game_which)->required()
        ->check(CLI::IsMember({"example1", "example2", "geometric"}));
    game->add_option("--theta", theta);

    auto* br = app.add_subcommand("bestresponse", "optimal policy against a prior");
    br->add_option("--dist", dist_file)->required();
    br->add_option("--grid", grid);

    auto* fig = app.add_subcommand("figure", "plot data for the x-strategy curves");
    fig->add_option("what", figure_what)->required();
    fig->add_option("--n-list", n_list)->required();
    fig->add_option("--grid", fig_grid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) {
            if (n_list.empty() == dist_file.empty())
                throw std::invalid_argument("eval needs exactly one of --n or --dist");
            return cmd_eval(spec, n_list, dist_file, mc, trials, seed);
        }
        if (cmp->parsed()) return cmd_compare(spec, spec_b, range, z_list);
        if (mm->parsed()) return cmd_minimax(steps);
        if (dom->parsed()) return cmd_dominate(n1);
        if (game->parsed()) return cmd_game(game_which, theta);
        if (br->parsed()) return cmd_bestresponse(dist_file, grid);
        if (fig->parsed()) return cmd_figure(figure_what, n_list, fig_grid);
    } catch (const bc::cli::parse_error& e) {
        std::fprintf(stderr, "parse error at position %zu: %s\n", e.position, e.what());
        return 2;
    } catch (const bc::unsupported_strategy& e) {
        std::fprintf(stderr, "unsupported: %s\n", e.what());
        return 3;
    } catch (const bc::construction_failed& e) {
        std::fprintf(stderr, "construction failed at stage %d: %s\n", e.stage, e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
