#include "flowsched/exact/candidates.hpp"

#include <set>

namespace flowsched::exact {

CandidateSets candidate_sets_round(const Instance& inst, int rounds) {
    std::map<std::string, std::set<Rational>> sets;
    for (const auto& job : inst.jobs) sets[job.arc] = {job.release, job.latest_start()};

    for (int k = 0; k < rounds; ++k) {
        std::map<std::string, std::set<Rational>> next = sets;
        for (const auto& job : inst.jobs) {
            auto& target = next[job.arc];
            auto consider = [&](const Rational& t) {
                if (t >= job.release && t <= job.latest_start()) target.insert(t);
            };
            for (const auto& other : inst.jobs) {
                if (other.arc == job.arc) continue;
                for (const Rational& t : sets[other.arc]) {
                    consider(t);
                    consider(t + other.processing);
                    consider(t - job.processing);
                    consider(t + other.processing - job.processing);
                }
            }
        }
        sets = std::move(next);
    }

    CandidateSets out;
    for (auto& [arc, s] : sets) out.starts[arc] = std::vector<Rational>(s.begin(), s.end());
    return out;
}

CandidateSets candidate_sets(const Instance& inst) {
    return candidate_sets_round(inst, static_cast<int>(inst.jobs.size()) - 1);
}

}  // namespace flowsched::exact
