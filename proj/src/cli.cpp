#include "pga/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pga/errors.hpp"
#include "pga/io.hpp"
#include "pga/manifold.hpp"
#include "pga/pga.hpp"
#include "pga/stats.hpp"
#include "pga/trajgen.hpp"

namespace pga {

namespace {

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

double plain_double(const std::string& text, const char* what) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() ||
        !std::isfinite(value)) {
        throw UsageError(std::string("invalid ") + what + " '" + text + "'");
    }
    return value;
}

// Accepts plain decimals plus a pi suffix: "5pi", "2.5pi", "pi", "-pi".
double parse_angle(const std::string& text, const char* what) {
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
        const std::string head = text.substr(0, text.size() - 2);
        if (head.empty() || head == "+") {
            return M_PI;
        }
        if (head == "-") {
            return -M_PI;
        }
        return plain_double(head, what) * M_PI;
    }
    return plain_double(text, what);
}

Vec3 parse_axis(const std::string& text) {
    Vec3 axis;
    size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        const size_t comma = text.find(',', start);
        const bool last = i == 2;
        if (last != (comma == std::string::npos)) {
            throw UsageError("axis must be three comma-separated numbers, got '" + text + "'");
        }
        const std::string part =
            text.substr(start, last ? std::string::npos : comma - start);
        axis[i] = plain_double(part, "axis coordinate");
        start = comma + 1;
    }
    return axis;
}

GenKind parse_kind(const std::string& text) {
    if (text == "geodesic") return GenKind::Geodesic;
    if (text == "winding") return GenKind::Winding;
    if (text == "pendulum") return GenKind::Pendulum;
    if (text == "random-walk") return GenKind::RandomWalk;
    if (text == "noisy") return GenKind::Noisy;
    throw UsageError("unknown kind '" + text + "'");
}

ComponentTag parse_manifold(const std::string& text) {
    if (text == "S2") return ComponentTag::S2;
    if (text == "SO3") return ComponentTag::SO3;
    if (text == "R3") return ComponentTag::R3;
    throw UsageError("unknown manifold '" + text + "'");
}

S2Scheme parse_scheme(const std::string& text) {
    if (text == "north2") return S2Scheme::North2;
    if (text == "ambient3") return S2Scheme::Ambient3;
    throw UsageError("unknown scheme '" + text + "'");
}

bool same_tags(const ProductLayout& a, const ProductLayout& b) {
    return a.tags == b.tags;
}

void run_gen(const std::string& kind, const std::string& manifold, int n,
             const std::string& axis, const std::string& angle,
             double amplitude, double omega, const std::string& duration,
             double step_scale, double noise_scale, std::uint64_t seed,
             const std::string& output) {
    GenSpec spec;
    spec.kind = parse_kind(kind);
    spec.manifold = parse_manifold(manifold);
    spec.n = n;
    spec.axis = parse_axis(axis);
    spec.angle = parse_angle(angle, "angle");
    spec.amplitude = amplitude;
    spec.omega = omega;
    spec.duration = duration.empty() ? -1.0 : parse_angle(duration, "duration");
    spec.step_scale = step_scale;
    spec.noise_scale = noise_scale;
    spec.seed = seed;

    const std::vector<ProductPoint> samples = generate(spec);
    ProductLayout layout;
    layout.tags = {spec.manifold};
    write_file(output, serialize_trajectory(layout, samples));
    std::printf("gen: wrote %zu samples (%s) to %s\n", samples.size(), manifold.c_str(),
                output.c_str());
}

void run_lift(const std::string& input, const std::string& scheme,
              const std::string& base_file, const std::string& output) {
    TrajectoryData data = parse_trajectory(read_file(input));
    if (data.projection_warnings > 0) {
        std::printf("lift: projected %d invalid components while parsing %s\n",
                    data.projection_warnings, input.c_str());
    }
    data.layout.scheme = parse_scheme(scheme);

    LiftedTrajectory lift;
    if (base_file.empty()) {
        lift = lift_trajectory(data.samples, data.layout);
    } else {
        const TrajectoryData base = parse_trajectory(read_file(base_file));
        if (!same_tags(base.layout, data.layout)) {
            throw ValidationError("base file layout does not match the trajectory");
        }
        if (base.samples.empty()) {
            throw ValidationError("base file has no samples");
        }
        lift = lift_trajectory(data.samples, data.layout, base.samples.front());
    }
    write_file(output, serialize_lift(lift));

    double final_norm = 0.0;
    if (!lift.tangents.empty()) {
        final_norm = lift.tangents.back().norm();
    }
    int crossings = 0;
    for (int c : boundary_crossings(lift)) {
        crossings += c;
    }
    std::printf("lift: wrote %zu tangents to %s, final tangent norm %s, "
                "branch crossings %d\n",
                lift.tangents.size(), output.c_str(), format_double(final_norm).c_str(),
                crossings);
}

void run_fit(const std::vector<std::string>& inputs, int rank,
             const std::string& output) {
    std::vector<LiftedTrajectory> lifts;
    lifts.reserve(inputs.size());
    for (const std::string& path : inputs) {
        lifts.push_back(parse_lift(read_file(path)));
    }
    for (size_t i = 1; i < lifts.size(); ++i) {
        if (!same_tags(lifts[i].layout, lifts[0].layout) ||
            lifts[i].layout.scheme != lifts[0].layout.scheme) {
            throw ValidationError("lift files have different layouts");
        }
        if (product_dist(lifts[i].base, lifts[0].base, lifts[0].layout) >
            constants::tau1) {
            throw ValidationError("lift files have different base points");
        }
    }

    // Single-trajectory mode drops the leading zero column; concatenated
    // trajectories keep every tangent.
    const bool drop_first = lifts.size() == 1 && !lifts[0].tangents.empty() &&
                            lifts[0].tangents.front().isZero(0.0);
    long cols = 0;
    for (const LiftedTrajectory& lift : lifts) {
        cols += static_cast<long>(lift.tangents.size());
    }
    if (drop_first) {
        cols -= 1;
    }
    MatX y(lifts[0].layout.tangent_dim(), cols);
    long col = 0;
    for (size_t i = 0; i < lifts.size(); ++i) {
        const MatX block = build_snapshot_matrix(lifts[i], i == 0 && drop_first);
        y.middleCols(col, block.cols()) = block;
        col += block.cols();
    }

    PgaModel model = pga_fit(y, lifts[0].base, lifts[0].layout);
    if (rank >= 0) {
        if (rank > model.rank()) {
            throw ValidationError("requested rank " + std::to_string(rank) +
                                  " exceeds the numerical rank " +
                                  std::to_string(model.rank()));
        }
        model.u = MatX(model.u.leftCols(rank));
        model.sigma = VecX(model.sigma.head(rank));
        model.v = MatX(model.v.leftCols(rank));
    }
    write_file(output, serialize_model(model));

    const double sigma1 = model.spectrum.size() > 0 ? model.spectrum[0] : 0.0;
    const double ratio =
        model.spectrum.size() > 1 && sigma1 > 0.0 ? model.spectrum[1] / sigma1 : 0.0;
    std::printf("fit: rank %d of %ld columns, sigma1 %s, sigma2/sigma1 %s\n",
                model.rank(), cols, format_double(sigma1).c_str(),
                format_double(ratio).c_str());
}

void run_reconstruct(const std::string& input, int rank, const std::string& output) {
    const PgaModel model = parse_model(read_file(input));
    const int p = rank >= 0 ? rank : model.rank();
    const std::vector<ProductPoint> points = reconstruct_trajectory(model, p);
    write_file(output, serialize_trajectory(model.layout, points));
    std::printf("reconstruct: wrote %zu samples at rank %d to %s\n", points.size(), p,
                output.c_str());
}

void run_mean(const std::vector<std::string>& inputs, double alpha, double tol,
              int max_iter, const std::string& output) {
    std::vector<ProductPoint> pool;
    ProductLayout layout;
    for (size_t i = 0; i < inputs.size(); ++i) {
        TrajectoryData data = parse_trajectory(read_file(inputs[i]));
        if (i == 0) {
            layout = data.layout;
        } else if (!same_tags(data.layout, layout)) {
            throw ValidationError("trajectory files have different layouts");
        }
        pool.insert(pool.end(), data.samples.begin(), data.samples.end());
    }
    MeanConfig cfg;
    cfg.alpha = alpha;
    cfg.tolerance = tol;
    cfg.max_iterations = max_iter;
    const MeanResult result = intrinsic_mean(pool, layout, cfg);
    write_file(output, serialize_trajectory(layout, {result.mean}));
    std::printf("mean: %zu points, converged in %d iterations, gradient norm %s\n",
                pool.size(), result.iterations,
                format_double(result.gradient_norm).c_str());
}

void run_stats(const std::string& traj_file, const std::string& lift_file, bool orth,
               const std::string& output, const std::string& angular) {
    const TrajectoryData data = parse_trajectory(read_file(traj_file));

    std::vector<ErrorRecord> records;
    if (orth || lift_file.empty()) {
        records = orth_normality_errors(data.samples);
    } else {
        const LiftedTrajectory lift = parse_lift(read_file(lift_file));
        if (!same_tags(lift.layout, data.layout)) {
            throw ValidationError("lift file layout does not match the trajectory");
        }
        records = lift_project_error(data.samples, lift);
    }

    const BinHistogram hist = bin_counts(records);
    std::ostringstream csv;
    csv << "bin_lo,bin_hi,count\n";
    for (const Bin& bin : hist.bins) {
        csv << format_double(bin.lo) << ',' << format_double(bin.hi) << ',' << bin.count
            << '\n';
    }
    write_file(output, csv.str());

    if (!angular.empty()) {
        std::ostringstream acsv;
        acsv << "theta,error\n";
        for (const ErrorRecord& rec : records) {
            acsv << format_double(rec.theta) << ',' << format_double(rec.error) << '\n';
        }
        write_file(angular, acsv.str());
    }

    const ErrorSummary summary = summarize(records);
    std::printf("stats: %ld records, max error %s, above 2^12 eps: %ld (%s)\n",
                summary.total, format_double(summary.max_error).c_str(),
                summary.large_count, format_double(summary.large_fraction).c_str());
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"principal geodesic analysis toolkit for sphere and rotation data"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic trajectory");
    std::string g_kind = "winding";
    std::string g_manifold = "SO3";
    int g_n = 100;
    std::string g_axis = "0,0,1";
    std::string g_angle = "pi";
    double g_amplitude = 1.0;
    double g_omega = 1.0;
    std::string g_duration;
    double g_step = 0.1;
    double g_noise = 1e-6;
    std::uint64_t g_seed = 0;
    std::string g_out;
    gen->add_option("--kind", g_kind, "geodesic|winding|pendulum|random-walk|noisy");
    gen->add_option("--manifold", g_manifold, "S2|SO3|R3");
    gen->add_option("--n", g_n, "step count for winding/geodesic, else sample count");
    gen->add_option("--axis", g_axis, "axis as x,y,z");
    gen->add_option("--angle", g_angle, "total angle, pi suffix allowed (e.g. 5pi)");
    gen->add_option("--amplitude", g_amplitude, "pendulum amplitude");
    gen->add_option("--omega", g_omega, "pendulum angular frequency");
    gen->add_option("--duration", g_duration, "pendulum time span (default pi/omega)");
    gen->add_option("--step-scale", g_step, "random walk step scale");
    gen->add_option("--noise-scale", g_noise, "noisy perturbation scale");
    gen->add_option("--seed", g_seed, "64-bit seed");
    gen->add_option("-o,--output", g_out, "output trajectory file")->required();

    // lift
    auto* lift = app.add_subcommand("lift", "lift a trajectory into a tangent space");
    std::string l_input;
    std::string l_scheme = "north2";
    std::string l_base;
    std::string l_out;
    lift->add_option("input", l_input, "trajectory file")->required();
    lift->add_option("--scheme", l_scheme, "S2 tangent coordinates: north2|ambient3");
    lift->add_option("--base", l_base, "trajectory file whose first sample is the base");
    lift->add_option("-o,--output", l_out, "output lift file")->required();

    // fit
    auto* fit = app.add_subcommand("fit", "fit principal geodesic modes to lifts");
    std::vector<std::string> f_inputs;
    int f_rank = -1;
    std::string f_out;
    fit->add_option("inputs", f_inputs, "lift files sharing layout and base")
        ->required()
        ->expected(-1);
    fit->add_option("--rank", f_rank, "keep at most this many modes");
    fit->add_option("-o,--output", f_out, "output model file")->required();

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "map a model back to snapshots");
    std::string r_input;
    int r_rank = -1;
    std::string r_out;
    rec->add_option("input", r_input, "model file")->required();
    rec->add_option("--rank", r_rank, "truncation rank (default: model rank)");
    rec->add_option("-o,--output", r_out, "output trajectory file")->required();

    // mean
    auto* mean = app.add_subcommand("mean", "intrinsic mean of pooled snapshots");
    std::vector<std::string> m_inputs;
    double m_alpha = 1.0;
    double m_tol = 1e-12;
    int m_max_iter = 200;
    std::string m_out;
    mean->add_option("inputs", m_inputs, "trajectory files")->required()->expected(-1);
    mean->add_option("--alpha", m_alpha, "gradient step length in (0,2)");
    mean->add_option("--tol", m_tol, "convergence tolerance on the gradient norm");
    mean->add_option("--max-iter", m_max_iter, "iteration limit");
    mean->add_option("-o,--output", m_out, "output trajectory file (one sample)")
        ->required();

    // stats
    auto* stats = app.add_subcommand("stats", "error histograms and distributions");
    std::string s_traj;
    std::string s_lift;
    bool s_orth = false;
    std::string s_out;
    std::string s_angular;
    stats->add_option("trajectory", s_traj, "trajectory file")->required();
    stats->add_option("lift", s_lift, "lift file for lift-and-project errors");
    stats->add_flag("--orth", s_orth, "orthogonality/normality errors instead");
    stats->add_option("-o,--output", s_out, "histogram CSV file")->required();
    stats->add_option("--angular", s_angular, "also write theta,error pairs here");

    try {
        std::vector<std::string> argv_like(args);
        argv_like.insert(argv_like.begin(), "pga");
        std::vector<const char*> argv;
        argv.reserve(argv_like.size());
        for (const std::string& a : argv_like) {
            argv.push_back(a.c_str());
        }
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (gen->parsed()) {
            run_gen(g_kind, g_manifold, g_n, g_axis, g_angle, g_amplitude, g_omega,
                    g_duration, g_step, g_noise, g_seed, g_out);
        } else if (lift->parsed()) {
            run_lift(l_input, l_scheme, l_base, l_out);
        } else if (fit->parsed()) {
            run_fit(f_inputs, f_rank, f_out);
        } else if (rec->parsed()) {
            run_reconstruct(r_input, r_rank, r_out);
        } else if (mean->parsed()) {
            run_mean(m_inputs, m_alpha, m_tol, m_max_iter, m_out);
        } else if (stats->parsed()) {
            run_stats(s_traj, s_lift, s_orth, s_out, s_angular);
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: usage: %s\n", e.what());
        return 2;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: validation: %s\n", e.what());
        return 3;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "error: numerical: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: internal: %s\n", e.what());
        return 4;
    }
}

}  // namespace pga
