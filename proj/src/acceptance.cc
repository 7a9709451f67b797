// Copyright 2026 The qnetlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qnetlab/acceptance.h"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "qnetlab/errors.h"
#include "qnetlab/network.h"
#include "qnetlab/protocols.h"
#include "qnetlab/tablegen.h"

using namespace qnetlab;

namespace {

constexpr double kFidelityFloor = 1 - 1e-9;

class Check {
   public:
    template <typename Message>
    bool expect(bool ok, Message &&message) {
        if (!ok && report_.passed) {
            report_.passed = false;
            report_.detail = message();
        }
        return ok;
    }
    void note(std::string line) {
        report_.notes.push_back(std::move(line));
    }
    CheckReport finish(std::string summary) {
        if (report_.passed) {
            report_.detail = std::move(summary);
        }
        return std::move(report_);
    }
    bool failed() const {
        return !report_.passed;
    }

   private:
    CheckReport report_;
};

std::string fmt(const char *format, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof(buffer), format, args...);
    return buffer;
}

std::string secret_text(const SecretSample &s) {
    return fmt("(%.4f%+.4fi, %.4f%+.4fi)", s.alpha.real(), s.alpha.imag(), s.beta.real(), s.beta.imag());
}

SecretSample random_secret(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    Amplitude a{normal(rng), normal(rng)};
    Amplitude b{normal(rng), normal(rng)};
    double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

std::vector<SecretSample> random_secrets(size_t count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<SecretSample> result;
    for (size_t i = 0; i < count; i++) {
        result.push_back(random_secret(rng));
    }
    return result;
}

std::vector<SecretSample> degenerate_secrets() {
    const double r = 1 / std::numbers::sqrt2;
    return {
        {1, 0}, {0, 1}, {r, r}, {r, -r}, {r, Amplitude(0, r)}, {r, Amplitude(0, -r)},
    };
}

TopologyOptions exact(const AcceptanceConfig &config) {
    TopologyOptions o;
    o.bell_convention = config.convention;
    return o;
}

TopologyOptions sampled(const AcceptanceConfig &config, uint64_t seed) {
    TopologyOptions o;
    o.mode = SimulationMode::Sampled;
    o.seed = seed;
    o.bell_convention = config.convention;
    return o;
}

double min_fidelity(const Topology &t, QubitHandle q) {
    auto f = t.secret_fidelities(q);
    return *std::min_element(f.begin(), f.end());
}

// Alice deals to Bob and Charlie; Alice and Bob also share a Bell pair.
struct RevokeSetup {
    Topology t;
    SharedSecretHandle handle;
    ResourceId dealer_bell;
};

RevokeSetup revoke_setup(const SecretSample &s, const TopologyOptions &options) {
    Topology t({"Alice", "Bob", "Charlie"}, options);
    auto secret = t.allocate_secret("Alice", s.alpha, s.beta);
    auto ghz = t.add_ghz("Alice", "Bob", "Charlie");
    auto bell = t.add_bell_pair("Alice", "Bob");
    auto h = share(t, "Alice", ghz, secret);
    return {std::move(t), h, bell};
}

struct RouteSetup {
    Topology t;
    SharedSecretHandle handle;
    ResourceId link;
};

RouteSetup route_setup(const SecretSample &s, const TopologyOptions &options) {
    Topology t({"Alice", "Bob", "Charlie", "R"}, options);
    auto secret = t.allocate_secret("Alice", s.alpha, s.beta);
    auto ghz = t.add_ghz("Alice", "Bob", "Charlie");
    auto link = t.add_bell_pair("Charlie", "R");
    auto h = share(t, "Alice", ghz, secret);
    return {std::move(t), h, link};
}

std::string chain_name(char side, int i) {
    return std::string(1, side) + std::to_string(i);
}

std::vector<PartyId> chain_parties(int pairs) {
    std::vector<PartyId> parties{"S"};
    for (int i = 1; i <= pairs; i++) {
        parties.push_back(chain_name('A', i));
        parties.push_back(chain_name('B', i));
    }
    parties.push_back("R");
    return parties;
}

// Shares from S over GHZ(S, A1, B1), hops along `path` (pair indices after
// the first, allocating each link just before it is used), then routes to R
// through a link from the final wing-b holder. Returns min fidelity at R.
double run_chain(const SecretSample &s, const std::vector<int> &path, int pairs, const TopologyOptions &options,
                 bool links_up_front) {
    Topology t(chain_parties(pairs), options);
    auto secret = t.allocate_secret("S", s.alpha, s.beta);
    auto ghz = t.add_ghz("S", "A1", "B1");
    std::vector<std::pair<ResourceId, ResourceId>> links;
    int at = 1;
    auto add_links = [&](int from, int to) {
        auto a = t.add_bell_pair(chain_name('A', from), chain_name('A', to));
        auto b = t.add_bell_pair(chain_name('B', from), chain_name('B', to));
        return std::make_pair(a, b);
    };
    std::optional<ResourceId> final_link;
    if (links_up_front) {
        for (int next : path) {
            links.push_back(add_links(at, next));
            at = next;
        }
        final_link = t.add_bell_pair(chain_name('B', at), "R");
        at = 1;
    }
    auto h = share(t, "S", ghz, secret);
    for (size_t k = 0; k < path.size(); k++) {
        auto link = links_up_front ? links[k] : add_links(at, path[k]);
        h = hop(t, h, link.first, link.second);
        at = path[k];
    }
    if (!final_link) {
        final_link = t.add_bell_pair(chain_name('B', at), "R");
    }
    t.release_bits("S", "R");
    auto r = route_reconstruct(t, h, "R", *final_link);
    return min_fidelity(t, r.reconstructed);
}

// 1. Share reproduces the published sharing rows.
CheckReport sharing_table(const AcceptanceConfig &config) {
    Check check;
    auto published = published_rows(TableProtocol::Share);
    auto secrets = random_secrets(12, 101);
    for (const auto &s : secrets) {
        Topology t({"Alice", "Bob", "Charlie"}, exact(config));
        auto secret = t.allocate_secret("Alice", s.alpha, s.beta);
        auto ghz = t.add_ghz("Alice", "Bob", "Charlie");
        auto h = share(t, "Alice", ghz, secret);
        check.expect(t.worlds().size() == 4, [&] { return fmt("share produced %zu branches", t.worlds().size()); });
        check.expect(t.qubit(h.wing_a).global_index == 0 && t.qubit(h.wing_b).global_index == 1, [] {
            return std::string("wings are not the only live qubits");
        });
        std::set<OutcomeLabel> seen;
        for (const auto &w : t.worlds()) {
            auto o = w.outcomes.at(h.share_seq);
            seen.insert(o.label);
            check.expect(std::abs(o.probability - 0.25) <= 1e-9, [&] {
                return fmt("outcome %s has probability %.12f for secret %s", outcome_name(o.label).data(),
                           o.probability, secret_text(s).c_str());
            });
            auto row = std::find_if(published.begin(), published.end(), [&](const PublishedRow &r) {
                return r.outcomes[0] == o.label;
            });
            if (!check.expect(row != published.end(), [&] {
                    return fmt("no published sharing row for %s", outcome_name(o.label).data());
                })) {
                continue;
            }
            double f = fidelity_phase_invariant(w.state, evaluate_form(row->expected, s));
            check.expect(f >= kFidelityFloor, [&] {
                return fmt("outcome %s: wings match %s with fidelity %.12f for secret %s",
                           outcome_name(o.label).data(), std::string(row->expected).c_str(), f,
                           secret_text(s).c_str());
            });
        }
        check.expect(seen.size() == 4, [&] { return fmt("only %zu distinct share outcomes", seen.size()); });
    }
    auto samples = default_secret_samples();
    auto diff = diff_against_published(derive_share_table(samples, config.convention));
    check.expect(diff.all_agree(), [&] {
        return fmt("derived sharing table disagrees with %zu published rows",
                   diff.rows.size() - diff.count(DiffStatus::Agree));
    });
    return check.finish(fmt("4 outcomes at p=1/4 matching all published rows for %zu secrets", secrets.size()));
}

CheckReport published_table_check(const AcceptanceConfig &config, TableProtocol protocol) {
    Check check;
    auto samples = default_secret_samples();
    auto table = protocol == TableProtocol::Revoke
                     ? derive_revocation_table(OutcomeLabel::PhiPlus, samples, config.convention)
                     : derive_routing_table(OutcomeLabel::PhiPlus, samples, config.convention);
    auto diff = diff_against_published(table);
    check.expect(diff.rows.size() == 8, [&] { return fmt("%zu published rows compared", diff.rows.size()); });
    for (const auto &r : diff.rows) {
        if (r.status == DiffStatus::Agree) {
            continue;
        }
        check.note(fmt("row %d (%s %s): published %s, derived %s, %s", r.published.row,
                       outcome_name(r.published.outcomes[0]).data(), outcome_name(r.published.outcomes[1]).data(),
                       std::string(r.published.expected).c_str(), r.derived.c_str(),
                       std::string(diff_status_name(r.status)).c_str()));
    }
    size_t disagreements = diff.rows.size() - diff.count(DiffStatus::Agree);
    check.expect(disagreements == 0, [&] {
        return fmt("%zu of %zu published rows differ from the derived table (%zu marked as suspected errata, "
                   "%zu unexplained)",
                   disagreements, diff.rows.size(), diff.count(DiffStatus::Erratum),
                   diff.count(DiffStatus::Disagree));
    });
    return check.finish(fmt("all %zu published rows agree", diff.rows.size()));
}

// 2. Revocation table against the published retrieval rows.
CheckReport retrieval_table(const AcceptanceConfig &config) {
    return published_table_check(config, TableProtocol::Revoke);
}

// 3. Routing table against the published sending rows.
CheckReport sending_table(const AcceptanceConfig &config) {
    return published_table_check(config, TableProtocol::Route);
}

std::vector<SecretSample> identity_secrets() {
    auto secrets = degenerate_secrets();
    auto random = random_secrets(100 - secrets.size(), 404);
    secrets.insert(secrets.end(), random.begin(), random.end());
    return secrets;
}

// 4. Every share x revoke path returns the secret to the dealer.
CheckReport revocation_identity(const AcceptanceConfig &config) {
    Check check;
    auto secrets = identity_secrets();
    for (const auto &s : secrets) {
        auto setup = revoke_setup(s, exact(config));
        auto r = revoke(setup.t, setup.handle, setup.dealer_bell);
        std::set<std::tuple<OutcomeLabel, OutcomeLabel, OutcomeLabel>> paths;
        for (const auto &w : setup.t.worlds()) {
            paths.emplace(w.outcomes.at(setup.handle.share_seq).label, w.outcomes.at(r.wing_a_seq).label,
                          w.outcomes.at(r.wing_b_seq).label);
        }
        check.expect(paths.size() == 32 && setup.t.worlds().size() == 32, [&] {
            return fmt("%zu distinct paths for secret %s", paths.size(), secret_text(s).c_str());
        });
        double f = min_fidelity(setup.t, r.recovered);
        check.expect(f >= kFidelityFloor, [&] {
            return fmt("recovered fidelity %.12f for secret %s", f, secret_text(s).c_str());
        });
        if (check.failed()) {
            break;
        }
    }
    return check.finish(fmt("32 paths at fidelity 1 for %zu secrets (6 degenerate)", secrets.size()));
}

// 5. Every share x route path reconstructs at the receiver, and routing before
// the dealer's release is refused.
CheckReport routing_identity(const AcceptanceConfig &config) {
    Check check;
    auto secrets = identity_secrets();
    for (const auto &s : secrets) {
        auto setup = route_setup(s, exact(config));
        bool refused = false;
        try {
            route_reconstruct(setup.t, setup.handle, "R", setup.link);
        } catch (const OrderingError &) {
            refused = true;
        }
        check.expect(refused, [] { return std::string("routing before release did not raise an ordering error"); });
        setup.t.release_bits("Alice", "R");
        auto r = route_reconstruct(setup.t, setup.handle, "R", setup.link);
        std::set<std::tuple<OutcomeLabel, OutcomeLabel, OutcomeLabel>> paths;
        for (const auto &w : setup.t.worlds()) {
            paths.emplace(w.outcomes.at(setup.handle.share_seq).label, w.outcomes.at(r.wing_b_seq).label,
                          w.outcomes.at(r.wing_a_seq).label);
        }
        check.expect(paths.size() == 32 && setup.t.worlds().size() == 32, [&] {
            return fmt("%zu distinct paths for secret %s", paths.size(), secret_text(s).c_str());
        });
        double f = min_fidelity(setup.t, r.reconstructed);
        check.expect(f >= kFidelityFloor, [&] {
            return fmt("reconstructed fidelity %.12f for secret %s", f, secret_text(s).c_str());
        });
        if (check.failed()) {
            break;
        }
    }
    return check.finish(fmt("32 paths at fidelity 1 and early routing refused for %zu secrets", secrets.size()));
}

// 6. Multi-hop chains.
CheckReport hop_chain(const AcceptanceConfig &config) {
    Check check;
    auto exact_secrets = random_secrets(3, 606);
    for (const auto &s : exact_secrets) {
        double f = run_chain(s, {2, 3}, 3, exact(config), true);
        check.expect(f >= kFidelityFloor, [&] {
            return fmt("2-hop exact chain: fidelity %.12f for secret %s", f, secret_text(s).c_str());
        });
    }
    const size_t paths = 1000;
    auto secrets = random_secrets(paths, 607);
    double worst = 1;
    for (size_t i = 0; i < paths && !check.failed(); i++) {
        double f = run_chain(secrets[i], {2, 3, 4, 5, 6}, 6, sampled(config, i), false);
        worst = std::min(worst, f);
        check.expect(f >= kFidelityFloor, [&] {
            return fmt("5-hop sampled chain, seed %zu: fidelity %.12f", i, f);
        });
    }
    // Forward to pair 3, back to pair 2 over fresh links, then on to pair 4.
    const size_t detours = 200;
    auto detour_secrets = random_secrets(detours, 608);
    for (size_t i = 0; i < detours && !check.failed(); i++) {
        double f = run_chain(detour_secrets[i], {2, 3, 2, 4}, 4, sampled(config, 10000 + i), false);
        worst = std::min(worst, f);
        check.expect(f >= kFidelityFloor, [&] {
            return fmt("back-tracking chain, seed %zu: fidelity %.12f", 10000 + i, f);
        });
    }
    if (!check.failed()) {
        check.note(fmt("2-hop exhaustive: %zu secrets x 8192 branches; 5-hop: %zu sampled paths; "
                       "detour: %zu paths; worst sampled fidelity %.15f",
                       exact_secrets.size(), paths, detours, worst));
    }
    return check.finish("fidelity 1 on every enumerated and sampled chain");
}

bool dm_close(const DensityMatrix &a, const DensityMatrix &b, double tol) {
    return a.dimension() == b.dimension() && trace_distance(a, b) < tol;
}

// 7. Nothing leaks before the dealer releases anything.
CheckReport secret_independence(const AcceptanceConfig &config) {
    Check check;
    auto secrets = random_secrets(40, 707);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected(0, 0) = 0.5;
    expected(3, 3) = 0.5;
    auto classical_pair = DensityMatrix::from_matrix(expected);

    double worst = 0;
    for (size_t i = 0; i + 1 < secrets.size(); i += 2) {
        const auto &s1 = secrets[i];
        const auto &s2 = secrets[i + 1];
        auto a = revoke_setup(s1, exact(config));
        auto b = revoke_setup(s2, exact(config));
        std::vector<std::vector<PartyId>> observers{{"Bob"}, {"Charlie"}, {"Bob", "Charlie"}};
        for (const auto &o : observers) {
            double d = knowledge_distance(a.t.knowledge(o), b.t.knowledge(o));
            worst = std::max(worst, d);
            check.expect(d < 1e-9, [&] {
                return fmt("after share, %s%s distinguishes %s from %s: distance %.3e", o[0].c_str(),
                           o.size() > 1 ? "+Charlie" : "", secret_text(s1).c_str(), secret_text(s2).c_str(), d);
            });
        }

        for (const auto &s : {s1, s2}) {
            Topology t({"Alice", "Bob", "Charlie"}, exact(config));
            auto secret = t.allocate_secret("Alice", s.alpha, s.beta);
            auto h = share(t, "Alice", t.add_ghz("Alice", "Bob", "Charlie"), secret);
            (void)h;
            auto joint = t.coalition_view({"Bob", "Charlie"}).local_dm;
            check.expect(dm_close(joint, classical_pair, 1e-9), [&] {
                return fmt("joint wing state is not (|00><00|+|11><11|)/2 for secret %s", secret_text(s).c_str());
            });
        }

        // After one hop, with hop outcomes reported only to the dealer.
        auto hop_view = [&](const SecretSample &s) {
            Topology t({"S", "A1", "B1", "A2", "B2"}, exact(config));
            auto secret = t.allocate_secret("S", s.alpha, s.beta);
            auto ghz = t.add_ghz("S", "A1", "B1");
            auto la = t.add_bell_pair("A1", "A2");
            auto lb = t.add_bell_pair("B1", "B2");
            auto h = share(t, "S", ghz, secret);
            hop(t, h, la, lb);
            return t;
        };
        auto ha = hop_view(s1);
        auto hb = hop_view(s2);
        for (std::vector<PartyId> o : {std::vector<PartyId>{"A1"}, {"B1"}, {"A2"}, {"B2"}, {"A2", "B2"}}) {
            double d = knowledge_distance(ha.knowledge(o), hb.knowledge(o));
            worst = std::max(worst, d);
            check.expect(d < 1e-9, [&] {
                return fmt("after a hop, %s%s distinguishes the secrets: distance %.3e", o[0].c_str(),
                           o.size() > 1 ? "+B2" : "", d);
            });
        }
    }
    check.note(fmt("largest distance between views of different secrets: %.3e", worst));
    return check.finish("20 secret pairs indistinguishable to every non-dealer party and coalition");
}

// 8. Revocation leaves nothing behind.
CheckReport revocation_erasure(const AcceptanceConfig &config) {
    Check check;
    auto secrets = random_secrets(40, 808);
    double worst = 0;
    for (size_t i = 0; i + 1 < secrets.size(); i += 2) {
        auto after_revoke = [&](const SecretSample &s) {
            auto setup = revoke_setup(s, exact(config));
            revoke(setup.t, setup.handle, setup.dealer_bell);
            return std::move(setup.t);
        };
        auto a = after_revoke(secrets[i]);
        auto b = after_revoke(secrets[i + 1]);
        std::vector<std::vector<PartyId>> observers{{"Bob"}, {"Charlie"}, {"Bob", "Charlie"}};
        for (const auto &o : observers) {
            double d = knowledge_distance(a.knowledge(o), b.knowledge(o));
            worst = std::max(worst, d);
            check.expect(d < 1e-9, [&] {
                return fmt("after revoke, %s%s distinguishes %s from %s: distance %.3e", o[0].c_str(),
                           o.size() > 1 ? "+Charlie" : "", secret_text(secrets[i]).c_str(),
                           secret_text(secrets[i + 1]).c_str(), d);
            });
        }
    }
    check.note(fmt("largest distance between views of different secrets: %.3e", worst));
    return check.finish("20 secret pairs indistinguishable to every non-dealer party after revoke");
}

bool chi_square_passes(const std::vector<size_t> &counts, double expected_each, double &statistic,
                       double &critical) {
    statistic = 0;
    for (auto c : counts) {
        double d = static_cast<double>(c) - expected_each;
        statistic += d * d / expected_each;
    }
    boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    critical = boost::math::quantile(boost::math::complement(dist, 0.001));
    return statistic < critical;
}

// 9. Outcome distributions.
CheckReport outcome_uniformity(const AcceptanceConfig &config) {
    Check check;
    auto secrets = degenerate_secrets();
    auto random = random_secrets(20, 909);
    secrets.insert(secrets.end(), random.begin(), random.end());

    auto prob_check = [&](double p, double expected, const char *what, const SecretSample &s) {
        check.expect(std::abs(p - expected) <= 1e-9, [&] {
            return fmt("%s probability %.12f, expected %.12f, secret %s", what, p, expected, secret_text(s).c_str());
        });
    };
    for (const auto &s : secrets) {
        auto setup = revoke_setup(s, exact(config));
        auto r = revoke(setup.t, setup.handle, setup.dealer_bell);
        for (const auto &w : setup.t.worlds()) {
            prob_check(w.outcomes.at(setup.handle.share_seq).probability, 0.25, "share", s);
            prob_check(w.outcomes.at(r.wing_a_seq).probability * w.outcomes.at(r.wing_b_seq).probability, 0.125,
                       "revoke joint", s);
        }
        Topology t({"S", "A1", "B1", "A2", "B2"}, exact(config));
        auto secret = t.allocate_secret("S", s.alpha, s.beta);
        auto ghz = t.add_ghz("S", "A1", "B1");
        auto la = t.add_bell_pair("A1", "A2");
        auto lb = t.add_bell_pair("B1", "B2");
        auto shared = share(t, "S", ghz, secret);
        auto h = hop(t, shared, la, lb);
        for (const auto &w : t.worlds()) {
            prob_check(w.outcomes.at(h.hop_seqs[0]).probability * w.outcomes.at(h.hop_seqs[1]).probability,
                       1.0 / 16, "hop joint", s);
        }
    }

    // Sampled mode: one seeded run per draw.
    const size_t draws = 100000;
    std::vector<size_t> share_counts(4), revoke_counts(8), hop_counts(16);
    std::mt19937_64 secret_rng(910);
    for (size_t i = 0; i < draws; i++) {
        auto s = random_secret(secret_rng);
        Topology t({"S", "A1", "B1", "A2", "B2"}, sampled(config, i));
        auto secret = t.allocate_secret("S", s.alpha, s.beta);
        auto ghz = t.add_ghz("S", "A1", "B1");
        auto h = share(t, "S", ghz, secret);
        auto la = t.add_bell_pair("A1", "A2");
        auto lb = t.add_bell_pair("B1", "B2");
        h = hop(t, h, la, lb);
        auto back = t.add_bell_pair("S", "A2");
        auto r = revoke(t, h, back);
        const auto &w = t.actual_world();
        share_counts[outcome_index(w.outcomes.at(h.share_seq).label)]++;
        hop_counts[4 * outcome_index(w.outcomes.at(h.hop_seqs[0]).label) +
                   outcome_index(w.outcomes.at(h.hop_seqs[1]).label)]++;
        revoke_counts[2 * outcome_index(w.outcomes.at(r.wing_a_seq).label) +
                      outcome_index(w.outcomes.at(r.wing_b_seq).label)]++;
    }
    for (auto [name, counts] : {std::pair<const char *, std::vector<size_t> *>{"share", &share_counts},
                                {"revoke", &revoke_counts},
                                {"hop", &hop_counts}}) {
        double statistic, critical;
        bool ok = chi_square_passes(*counts, static_cast<double>(draws) / counts->size(), statistic, critical);
        check.note(fmt("%s: chi-square %.3f over %zu cells, critical %.3f at 0.001", name, statistic, counts->size(),
                       critical));
        check.expect(ok, [&] {
            return fmt("sampled %s outcomes fail chi-square: %.3f >= %.3f", name, statistic, critical);
        });
    }
    return check.finish(fmt("exact probabilities 1/4, 1/8, 1/16 for %zu secrets; %zu sampled draws uniform",
                            secrets.size(), draws));
}

// 10. What the protocols apply equals what the oracle derives.
CheckReport oracle_equivalence(const AcceptanceConfig &config) {
    Check check;
    auto samples = default_secret_samples();
    std::map<OutcomeLabel, CorrectionTable> revoke_tables, route_tables, hop_tables;
    for (auto b : kBellOutcomes) {
        revoke_tables.emplace(b, derive_revocation_table(b, samples, config.convention));
        route_tables.emplace(b, derive_routing_table(b, samples, config.convention));
        hop_tables.emplace(b, derive_hop_table(b, samples, config.convention));
    }
    auto share_table = derive_share_table(samples, config.convention);
    size_t compared = 0;

    for (auto b : kBellOutcomes) {
        auto [pa, pb] = share_branch_paulis(b);
        const auto &row = share_table.row({b});
        check.expect(row.correction == std::vector<PauliCorrection>{pa, pb}, [&] {
            return fmt("share %s: protocol wing Paulis %s,%s, oracle %s,%s", outcome_name(b).data(),
                       pa.name().data(), pb.name().data(), row.correction[0].name().data(),
                       row.correction[1].name().data());
        });
        compared++;
    }

    auto secret = samples.front();
    {
        auto setup = revoke_setup(secret, exact(config));
        auto r = revoke(setup.t, setup.handle, setup.dealer_bell);
        for (const auto &w : setup.t.worlds()) {
            auto b = w.outcomes.at(setup.handle.share_seq).label;
            auto m = w.outcomes.at(r.wing_a_seq).label;
            auto h = w.outcomes.at(r.wing_b_seq).label;
            auto applied = w.corrections.at(r.correction_seq);
            const auto &row = revoke_tables.at(b).row({m, h});
            check.expect(row.correction.size() == 1 && row.correction[0] == applied, [&] {
                return fmt("revoke branch %s row (%s, %s): protocol %s, oracle %s", outcome_name(b).data(),
                           outcome_name(m).data(), outcome_name(h).data(), applied.name().data(),
                           row.correction[0].name().data());
            });
            compared++;
        }
    }
    {
        auto setup = route_setup(secret, exact(config));
        setup.t.release_bits("Alice", "R");
        auto r = route_reconstruct(setup.t, setup.handle, "R", setup.link);
        for (const auto &w : setup.t.worlds()) {
            auto b = w.outcomes.at(setup.handle.share_seq).label;
            auto m = w.outcomes.at(r.wing_b_seq).label;
            auto h = w.outcomes.at(r.wing_a_seq).label;
            auto applied = w.corrections.at(r.correction_seq);
            const auto &row = route_tables.at(b).row({m, h});
            check.expect(row.correction.size() == 1 && row.correction[0] == applied, [&] {
                return fmt("route branch %s row (%s, %s): protocol %s, oracle %s", outcome_name(b).data(),
                           outcome_name(m).data(), outcome_name(h).data(), applied.name().data(),
                           row.correction[0].name().data());
            });
            compared++;
        }
    }
    {
        Topology t({"S", "A1", "B1", "A2", "B2"}, exact(config));
        auto q = t.allocate_secret("S", secret.alpha, secret.beta);
        auto ghz = t.add_ghz("S", "A1", "B1");
        auto la = t.add_bell_pair("A1", "A2");
        auto lb = t.add_bell_pair("B1", "B2");
        auto shared = share(t, "S", ghz, q);
        auto h = hop(t, shared, la, lb);
        for (const auto &w : t.worlds()) {
            auto b = w.outcomes.at(h.share_seq).label;
            auto ma = w.outcomes.at(h.hop_seqs[0]).label;
            auto mb = w.outcomes.at(h.hop_seqs[1]).label;
            std::vector<PauliCorrection> frame{w.frame.at(h.wing_a), w.frame.at(h.wing_b)};
            const auto &row = hop_tables.at(b).row({ma, mb});
            // Wing pairs differing by ZZ act identically on the shared state.
            bool admissible = std::find(row.admissible.begin(), row.admissible.end(), frame) != row.admissible.end();
            check.expect(admissible, [&] {
                return fmt("hop branch %s row (%s, %s): frame %s,%s not admissible, oracle %s,%s",
                           outcome_name(b).data(),
                           outcome_name(ma).data(), outcome_name(mb).data(), frame[0].name().data(),
                           frame[1].name().data(), row.correction[0].name().data(),
                           row.correction[1].name().data());
            });
            compared++;
        }
    }
    return check.finish(
        fmt("%zu protocol corrections match the oracle (hop frames up to the ZZ stabilizer)", compared));
}

const std::vector<Criterion> kCriteria{
    {1, "sharing-table", {"tables"}, 1, sharing_table},
    {2, "retrieval-table", {"tables"}, 1, retrieval_table},
    {3, "sending-table", {"tables"}, 1, sending_table},
    {4, "revocation-identity", {"protocols"}, 5, revocation_identity},
    {5, "routing-identity", {"protocols"}, 5, routing_identity},
    {6, "hop-chain", {"protocols"}, 30, hop_chain},
    {7, "secret-independence", {"security"}, 5, secret_independence},
    {8, "revocation-erasure", {"security"}, 5, revocation_erasure},
    {9, "outcome-uniformity", {"statistics"}, 10, outcome_uniformity},
    {10, "oracle-protocol-equivalence", {"tables", "protocols"}, 5, oracle_equivalence},
};

}  // namespace

std::span<const Criterion> qnetlab::acceptance_criteria() {
    return kCriteria;
}

bool qnetlab::matches_filter(const Criterion &c, std::string_view filter) {
    if (filter.empty()) {
        return true;
    }
    if (std::find(c.tags.begin(), c.tags.end(), filter) != c.tags.end()) {
        return true;
    }
    if (c.name.find(filter) != std::string_view::npos) {
        return true;
    }
    return filter == std::to_string(c.id) || filter == fmt("c%02d", c.id);
}

CriterionResult qnetlab::run_criterion(const Criterion &c, const AcceptanceConfig &config) {
    auto start = std::chrono::steady_clock::now();
    CheckReport report;
    try {
        report = c.check(config);
    } catch (const std::exception &e) {
        report.passed = false;
        report.detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return CriterionResult{&c, std::move(report), seconds};
}

std::string qnetlab::format_result(const CriterionResult &r) {
    const auto &c = *r.criterion;
    std::string line = fmt("%s c%02d %s (%.2f s, limit %g s): ", r.passed() ? "PASS" : "FAIL", c.id,
                           std::string(c.name).c_str(), r.seconds, c.time_limit_seconds);
    if (r.report.passed && r.seconds >= c.time_limit_seconds) {
        line += "over the time limit; ";
    }
    line += r.report.detail;
    for (const auto &n : r.report.notes) {
        line += "\n    " + n;
    }
    return line;
}
