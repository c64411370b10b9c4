#include "pga/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "pga/errors.hpp"
#include "pga/rotation.hpp"
#include "pga/sphere.hpp"

namespace pga {

using constants::eps_m;
using constants::eps_o3;

std::string format_double(double x) {
    char buf[32];
    const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw ValidationError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_lines(const std::string& text) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        std::string_view line(text.data() + start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        if (end == text.size()) {
            break;
        }
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    return lines;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
            ++i;
        }
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
            ++i;
        }
        if (i > start) {
            tokens.push_back(line.substr(start, i - start));
        }
    }
    return tokens;
}

double parse_double(std::string_view token, int line) {
    double value = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        fail(line, "expected a number, got '" + std::string(token) + "'");
    }
    if (!std::isfinite(value)) {
        fail(line, "non-finite number '" + std::string(token) + "'");
    }
    return value;
}

long parse_long(std::string_view token, int line, long min_value) {
    long value = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        fail(line, "expected an integer, got '" + std::string(token) + "'");
    }
    if (value < min_value) {
        fail(line, "integer " + std::to_string(value) + " below " + std::to_string(min_value));
    }
    return value;
}

// Reads lines in order and reports 1-based numbers in errors.
struct Cursor {
    std::vector<std::string_view> lines;
    size_t idx = 0;

    std::string_view next(const char* what) {
        if (idx >= lines.size()) {
            throw ValidationError("unexpected end of file, expected " + std::string(what));
        }
        return lines[idx++];
    }
    int line() const { return static_cast<int>(idx); }
};

const char* tag_name(ComponentTag tag) {
    switch (tag) {
        case ComponentTag::S2:
            return "S2";
        case ComponentTag::SO3:
            return "SO3";
        default:
            return "R3";
    }
}

void serialize_layout_line(std::ostringstream& out, const ProductLayout& layout) {
    out << "layout";
    size_t i = 0;
    while (i < layout.tags.size()) {
        size_t j = i;
        while (j < layout.tags.size() && layout.tags[j] == layout.tags[i]) {
            ++j;
        }
        out << ' ' << tag_name(layout.tags[i]);
        if (j - i > 1) {
            out << '*' << (j - i);
        }
        i = j;
    }
    out << '\n';
}

ProductLayout parse_layout_line(std::string_view line, int line_no, S2Scheme scheme) {
    const auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0] != "layout") {
        fail(line_no, "expected a layout line");
    }
    if (tokens.size() < 2) {
        fail(line_no, "layout has no components");
    }
    ProductLayout layout;
    layout.scheme = scheme;
    for (size_t t = 1; t < tokens.size(); ++t) {
        std::string_view entry = tokens[t];
        long count = 1;
        const size_t star = entry.find('*');
        if (star != std::string_view::npos) {
            count = parse_long(entry.substr(star + 1), line_no, 1);
            entry = entry.substr(0, star);
        }
        ComponentTag tag;
        if (entry == "S2") {
            tag = ComponentTag::S2;
        } else if (entry == "SO3") {
            tag = ComponentTag::SO3;
        } else if (entry == "R3") {
            tag = ComponentTag::R3;
        } else {
            fail(line_no, "unknown component tag '" + std::string(entry) + "'");
        }
        layout.tags.insert(layout.tags.end(), static_cast<size_t>(count), tag);
    }
    return layout;
}

void serialize_snapshot(std::ostringstream& out, const ProductLayout& layout,
                        const ProductPoint& p) {
    bool first = true;
    auto emit = [&](double x) {
        if (!first) {
            out << ' ';
        }
        out << format_double(x);
        first = false;
    };
    for (size_t c = 0; c < layout.tags.size(); ++c) {
        switch (layout.tags[c]) {
            case ComponentTag::S2: {
                const Vec3& d = std::get<S2Point>(p.components[c]).d;
                emit(d.x());
                emit(d.y());
                emit(d.z());
                break;
            }
            case ComponentTag::SO3: {
                const Mat3& r = std::get<SO3Point>(p.components[c]).r;
                for (int a = 0; a < 3; ++a) {
                    for (int b = 0; b < 3; ++b) {
                        emit(r(a, b));
                    }
                }
                break;
            }
            case ComponentTag::R3: {
                const Vec3& x = std::get<R3Point>(p.components[c]).x;
                emit(x.x());
                emit(x.y());
                emit(x.z());
                break;
            }
        }
    }
    out << '\n';
}

// Parses one snapshot line, projecting invalid directors and rotations back
// onto their manifolds; counts the projections in warnings.
ProductPoint parse_snapshot(std::string_view line, int line_no,
                            const ProductLayout& layout, int& warnings) {
    const auto tokens = split_tokens(line);
    if (static_cast<int>(tokens.size()) != layout.snapshot_dim()) {
        fail(line_no, "expected " + std::to_string(layout.snapshot_dim()) +
                          " fields, got " + std::to_string(tokens.size()));
    }
    ProductPoint p;
    p.components.reserve(layout.tags.size());
    size_t t = 0;
    auto take = [&]() { return parse_double(tokens[t++], line_no); };
    for (size_t c = 0; c < layout.tags.size(); ++c) {
        switch (layout.tags[c]) {
            case ComponentTag::S2: {
                // take() calls are sequenced explicitly; constructor argument
                // evaluation order would not be.
                const double dx = take();
                const double dy = take();
                const double dz = take();
                Vec3 d(dx, dy, dz);
                if (normality_error(d) > 8 * eps_m) {
                    if (d.norm() == 0.0) {
                        fail(line_no, "director is the zero vector");
                    }
                    d = proj_s2(d);
                    ++warnings;
                }
                p.components.emplace_back(S2Point{d});
                break;
            }
            case ComponentTag::SO3: {
                Mat3 r;
                for (int a = 0; a < 3; ++a) {
                    for (int b = 0; b < 3; ++b) {
                        r(a, b) = take();
                    }
                }
                if (orth_error(r) > eps_o3 || r.determinant() <= 0.0) {
                    if (r.determinant() <= 0.0) {
                        fail(line_no, "rotation block has non-positive determinant");
                    }
                    r = proj_so3(r);
                    ++warnings;
                }
                p.components.emplace_back(SO3Point{r});
                break;
            }
            case ComponentTag::R3: {
                const double xx = take();
                const double xy = take();
                const double xz = take();
                p.components.emplace_back(R3Point{Vec3(xx, xy, xz)});
                break;
            }
        }
    }
    return p;
}

S2Scheme parse_scheme_line(std::string_view line, int line_no) {
    const auto tokens = split_tokens(line);
    if (tokens.size() != 2 || tokens[0] != "scheme") {
        fail(line_no, "expected a scheme line");
    }
    if (tokens[1] == "north2") {
        return S2Scheme::North2;
    }
    if (tokens[1] == "ambient3") {
        return S2Scheme::Ambient3;
    }
    fail(line_no, "unknown scheme '" + std::string(tokens[1]) + "'");
}

void check_header(Cursor& cur, const char* tag) {
    const auto tokens = split_tokens(cur.next("header"));
    if (tokens.size() != 2 || tokens[0] != tag || tokens[1] != "1") {
        fail(cur.line(), std::string("expected header '") + tag + " 1'");
    }
}

int non_euclidean_components(const ProductLayout& layout) {
    int n = 0;
    for (ComponentTag tag : layout.tags) {
        if (tag != ComponentTag::R3) {
            ++n;
        }
    }
    return n;
}

}  // namespace

std::string serialize_trajectory(const ProductLayout& layout,
                                 const std::vector<ProductPoint>& samples) {
    for (const ProductPoint& p : samples) {
        validate_shape(p, layout);
    }
    std::ostringstream out;
    out << "pga-traj 1\n";
    serialize_layout_line(out, layout);
    out << samples.size() << '\n';
    for (const ProductPoint& p : samples) {
        serialize_snapshot(out, layout, p);
    }
    return out.str();
}

TrajectoryData parse_trajectory(const std::string& text) {
    Cursor cur{split_lines(text)};
    check_header(cur, "pga-traj");
    TrajectoryData data;
    {
        const std::string_view line = cur.next("layout");
        data.layout = parse_layout_line(line, cur.line(), S2Scheme::North2);
    }
    const long count = parse_long(cur.next("sample count"), cur.line(), 0);
    data.samples.reserve(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i) {
        const std::string_view line = cur.next("snapshot line");
        data.samples.push_back(
            parse_snapshot(line, cur.line(), data.layout, data.projection_warnings));
    }
    if (cur.idx != cur.lines.size()) {
        fail(cur.line() + 1, "trailing content after the last snapshot");
    }
    return data;
}

std::string serialize_lift(const LiftedTrajectory& lift) {
    std::ostringstream out;
    out << "pga-lift 1\n";
    serialize_layout_line(out, lift.layout);
    out << "scheme" << ' '
        << (lift.layout.scheme == S2Scheme::North2 ? "north2" : "ambient3") << '\n';
    out << "base ";
    serialize_snapshot(out, lift.layout, lift.base);
    out << lift.tangents.size() << '\n';
    for (size_t i = 0; i < lift.tangents.size(); ++i) {
        const VecX& v = lift.tangents[i];
        for (int j = 0; j < v.size(); ++j) {
            if (j > 0) {
                out << ' ';
            }
            out << format_double(v[j]);
        }
        for (size_t c = 0; c < lift.layout.tags.size(); ++c) {
            if (lift.layout.tags[c] != ComponentTag::R3) {
                out << ' ' << lift.branches[i][c];
            }
        }
        out << '\n';
    }
    return out.str();
}

LiftedTrajectory parse_lift(const std::string& text) {
    Cursor cur{split_lines(text)};
    check_header(cur, "pga-lift");
    LiftedTrajectory lift;
    {
        const std::string_view line = cur.next("layout");
        lift.layout = parse_layout_line(line, cur.line(), S2Scheme::North2);
    }
    lift.layout.scheme = parse_scheme_line(cur.next("scheme"), cur.line());
    {
        const std::string_view line = cur.next("base point");
        const auto tokens = split_tokens(line);
        if (tokens.empty() || tokens[0] != "base") {
            fail(cur.line(), "expected a base line");
        }
        int ignored = 0;
        const size_t body = static_cast<size_t>(tokens[0].data() - line.data()) +
                            tokens[0].size();
        lift.base = parse_snapshot(line.substr(body), cur.line(), lift.layout, ignored);
    }
    const long count = parse_long(cur.next("tangent count"), cur.line(), 0);
    const int m = lift.layout.tangent_dim();
    const int extras = non_euclidean_components(lift.layout);
    lift.tangents.reserve(static_cast<size_t>(count));
    lift.branches.reserve(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i) {
        const std::string_view line = cur.next("tangent line");
        const auto tokens = split_tokens(line);
        if (static_cast<int>(tokens.size()) != m + extras) {
            fail(cur.line(), "expected " + std::to_string(m + extras) +
                                 " fields, got " + std::to_string(tokens.size()));
        }
        VecX v(m);
        for (int j = 0; j < m; ++j) {
            v[j] = parse_double(tokens[static_cast<size_t>(j)], cur.line());
        }
        std::vector<int> trace(lift.layout.tags.size(), 0);
        size_t t = static_cast<size_t>(m);
        for (size_t c = 0; c < lift.layout.tags.size(); ++c) {
            if (lift.layout.tags[c] != ComponentTag::R3) {
                trace[c] = static_cast<int>(parse_long(tokens[t++], cur.line(), 0));
            }
        }
        lift.tangents.push_back(std::move(v));
        lift.branches.push_back(std::move(trace));
    }
    if (cur.idx != cur.lines.size()) {
        fail(cur.line() + 1, "trailing content after the last tangent");
    }
    return lift;
}

std::string serialize_model(const PgaModel& model) {
    std::ostringstream out;
    out << "pga-model 1\n";
    serialize_layout_line(out, model.layout);
    out << "scheme" << ' '
        << (model.layout.scheme == S2Scheme::North2 ? "north2" : "ambient3") << '\n';
    out << "base ";
    serialize_snapshot(out, model.layout, model.base);
    out << "dims " << model.u.rows() << ' ' << model.rank() << ' ' << model.v.rows()
        << '\n';
    out << "spectrum " << model.spectrum.size();
    for (int j = 0; j < model.spectrum.size(); ++j) {
        out << ' ' << format_double(model.spectrum[j]);
    }
    out << '\n';
    out << "sigma";
    for (int j = 0; j < model.rank(); ++j) {
        out << ' ' << format_double(model.sigma[j]);
    }
    out << '\n';
    for (int a = 0; a < model.u.rows(); ++a) {
        for (int j = 0; j < model.rank(); ++j) {
            if (j > 0) {
                out << ' ';
            }
            out << format_double(model.u(a, j));
        }
        out << '\n';
    }
    for (int a = 0; a < model.v.rows(); ++a) {
        for (int j = 0; j < model.rank(); ++j) {
            if (j > 0) {
                out << ' ';
            }
            out << format_double(model.v(a, j));
        }
        out << '\n';
    }
    return out.str();
}

PgaModel parse_model(const std::string& text) {
    Cursor cur{split_lines(text)};
    check_header(cur, "pga-model");
    PgaModel model;
    {
        const std::string_view line = cur.next("layout");
        model.layout = parse_layout_line(line, cur.line(), S2Scheme::North2);
    }
    model.layout.scheme = parse_scheme_line(cur.next("scheme"), cur.line());
    {
        const std::string_view line = cur.next("base point");
        const auto tokens = split_tokens(line);
        if (tokens.empty() || tokens[0] != "base") {
            fail(cur.line(), "expected a base line");
        }
        int ignored = 0;
        const size_t body = static_cast<size_t>(tokens[0].data() - line.data()) +
                            tokens[0].size();
        model.base = parse_snapshot(line.substr(body), cur.line(), model.layout, ignored);
    }
    long m = 0;
    long r = 0;
    long n = 0;
    {
        const auto tokens = split_tokens(cur.next("dims"));
        if (tokens.size() != 4 || tokens[0] != "dims") {
            fail(cur.line(), "expected a dims line");
        }
        m = parse_long(tokens[1], cur.line(), 0);
        r = parse_long(tokens[2], cur.line(), 0);
        n = parse_long(tokens[3], cur.line(), 0);
        if (m != model.layout.tangent_dim()) {
            fail(cur.line(), "dims row count does not match the layout dimension");
        }
        if (r > m || r > n) {
            fail(cur.line(), "rank exceeds the matrix dimensions");
        }
    }
    {
        const auto tokens = split_tokens(cur.next("spectrum"));
        if (tokens.size() < 2 || tokens[0] != "spectrum") {
            fail(cur.line(), "expected a spectrum line");
        }
        const long q = parse_long(tokens[1], cur.line(), 0);
        if (static_cast<long>(tokens.size()) != q + 2) {
            fail(cur.line(), "spectrum length does not match its count");
        }
        model.spectrum = VecX(q);
        for (long j = 0; j < q; ++j) {
            model.spectrum[j] = parse_double(tokens[static_cast<size_t>(j) + 2], cur.line());
        }
    }
    {
        const auto tokens = split_tokens(cur.next("sigma"));
        if (tokens.empty() || tokens[0] != "sigma") {
            fail(cur.line(), "expected a sigma line");
        }
        if (static_cast<long>(tokens.size()) != r + 1) {
            fail(cur.line(), "sigma length does not match the rank");
        }
        model.sigma = VecX(r);
        for (long j = 0; j < r; ++j) {
            model.sigma[j] = parse_double(tokens[static_cast<size_t>(j) + 1], cur.line());
            if (model.sigma[j] <= 0.0 || (j > 0 && model.sigma[j] > model.sigma[j - 1])) {
                fail(cur.line(), "singular values must be positive and descending");
            }
        }
    }
    model.u = MatX(m, r);
    model.v = MatX(n, r);
    if (r > 0) {
        for (long a = 0; a < m; ++a) {
            const auto tokens = split_tokens(cur.next("left singular vector row"));
            if (static_cast<long>(tokens.size()) != r) {
                fail(cur.line(), "expected " + std::to_string(r) + " fields");
            }
            for (long j = 0; j < r; ++j) {
                model.u(a, j) = parse_double(tokens[static_cast<size_t>(j)], cur.line());
            }
        }
        for (long a = 0; a < n; ++a) {
            const auto tokens = split_tokens(cur.next("right singular vector row"));
            if (static_cast<long>(tokens.size()) != r) {
                fail(cur.line(), "expected " + std::to_string(r) + " fields");
            }
            for (long j = 0; j < r; ++j) {
                model.v(a, j) = parse_double(tokens[static_cast<size_t>(j)], cur.line());
            }
        }
    }
    if (cur.idx != cur.lines.size()) {
        fail(cur.line() + 1, "trailing content after the model");
    }
    return model;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open '" + path + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw ValidationError("failed while writing '" + path + "'");
    }
}

}  // namespace pga
