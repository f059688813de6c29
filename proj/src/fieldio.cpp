#include "ballmodes/fieldio.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballmodes::fieldio {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& token) {
    const char* begin = token.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw std::runtime_error("failed to parse number: '" + token + "'");
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(line);
    while (std::getline(in, token, ',')) out.push_back(token);
    return out;
}

void check_dims(int n_r, int n_theta, int n_phi) {
    if (n_r < 2 || n_theta < 2 || n_phi < 2)
        throw std::invalid_argument("grid needs at least 2 samples per direction");
}

}  // namespace

GridField sample(const FieldEvaluator& f, int n_r, int n_theta, int n_phi, double radius) {
    check_dims(n_r, n_theta, n_phi);
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("sample: radius must be positive");
    GridField grid;
    grid.radius = radius;
    grid.n_r = n_r;
    grid.n_theta = n_theta;
    grid.n_phi = n_phi;
    grid.samples.resize(static_cast<std::size_t>(n_r) * n_theta * n_phi);
    for (int i = 0; i < n_r; ++i)
        for (int j = 0; j < n_theta; ++j)
            for (int l = 0; l < n_phi; ++l)
                grid.samples[grid.flat(i, j, l)] =
                    f({grid.r_at(i), grid.theta_at(j), grid.phi_at(l)});
    return grid;
}

namespace {

/// Catmull-Rom weights for the four-point stencil around fractional t.
std::array<double, 4> catmull_rom(double t) {
    const double t2 = t * t, t3 = t2 * t;
    return {0.5 * (-t3 + 2.0 * t2 - t), 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0),
            0.5 * (-3.0 * t3 + 4.0 * t2 + t), 0.5 * (t3 - t2)};
}

int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

int wrap_index(int i, int n) {
    int w = i % n;
    if (w < 0) w += n;
    return w;
}

}  // namespace

FieldEvaluator make_interpolator(GridField grid) {
    check_dims(grid.n_r, grid.n_theta, grid.n_phi);
    if (grid.samples.size() != static_cast<std::size_t>(grid.n_r) * grid.n_theta * grid.n_phi)
        throw std::invalid_argument("interpolator: sample count does not match dims");
    auto g = std::make_shared<const GridField>(std::move(grid));
    return [g](const SphericalPoint& p) -> VectorValue {
        if (!std::isfinite(p.r) || p.r < 0.0 || p.r > g->radius * (1.0 + 1e-12))
            throw std::domain_error("interpolation point lies outside the ball");
        // Fractional grid coordinates; r_i = R (i+1)/n_r, theta_j = pi j/(nt-1).
        const double fr = p.r / g->radius * g->n_r - 1.0;
        const double ft = p.theta / kPi * (g->n_theta - 1);
        double fp = p.phi / (2.0 * kPi) * g->n_phi;
        fp -= std::floor(fp / g->n_phi) * g->n_phi;  // wrap into [0, n_phi)

        const int i0 = static_cast<int>(std::floor(fr));
        const int j0 = static_cast<int>(std::floor(ft));
        const int l0 = static_cast<int>(std::floor(fp));
        const auto wr = catmull_rom(fr - i0);
        const auto wt = catmull_rom(ft - j0);
        const auto wp = catmull_rom(fp - l0);

        VectorValue out;
        for (int a = 0; a < 4; ++a) {
            const int i = clamp_index(i0 - 1 + a, g->n_r);
            for (int b = 0; b < 4; ++b) {
                const int j = clamp_index(j0 - 1 + b, g->n_theta);
                const double w_ab = wr[a] * wt[b];
                for (int c = 0; c < 4; ++c) {
                    const int l = wrap_index(l0 - 1 + c, g->n_phi);
                    const double w = w_ab * wp[c];
                    const VectorValue& s = g->at(i, j, l);
                    out.u_r += w * s.u_r;
                    out.u_theta += w * s.u_theta;
                    out.u_phi += w * s.u_phi;
                }
            }
        }
        return out;
    };
}

std::string termination_name(Termination t) {
    switch (t) {
        case Termination::Boundary: return "boundary";
        case Termination::MaxSteps: return "max-steps";
        case Termination::Stagnation: return "stagnation";
    }
    throw std::invalid_argument("unknown termination");
}

Termination termination_from_name(const std::string& name) {
    if (name == "boundary") return Termination::Boundary;
    if (name == "max-steps") return Termination::MaxSteps;
    if (name == "stagnation") return Termination::Stagnation;
    throw std::invalid_argument("unknown termination name: " + name);
}

Streamline trace_streamline(const CartesianField& u, const Vec3& seed, double radius,
                            double step, int max_steps) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("trace: radius must be positive");
    if (!(step > 0.0) || !std::isfinite(step))
        throw std::invalid_argument("trace: step must be positive");
    if (max_steps < 1) throw std::invalid_argument("trace: max_steps must be >= 1");
    if (norm(seed) > radius * (1.0 + 1e-12))
        throw std::invalid_argument("trace: seed lies outside the ball");

    Streamline line;
    line.seed = seed;
    line.step = step;
    line.termination = Termination::MaxSteps;
    line.points.push_back(seed);

    auto inside = [&](const Vec3& q) { return norm(q) <= radius; };
    Vec3 x = seed;
    for (int s = 0; s < max_steps; ++s) {
        const Vec3 k1 = u(x);
        if (norm(k1) < 1e-12) {
            line.termination = Termination::Stagnation;
            break;
        }
        const Vec3 x2 = x + 0.5 * step * k1;
        if (!inside(x2)) {
            line.termination = Termination::Boundary;
            break;
        }
        const Vec3 k2 = u(x2);
        const Vec3 x3 = x + 0.5 * step * k2;
        if (!inside(x3)) {
            line.termination = Termination::Boundary;
            break;
        }
        const Vec3 k3 = u(x3);
        const Vec3 x4 = x + step * k3;
        if (!inside(x4)) {
            line.termination = Termination::Boundary;
            break;
        }
        const Vec3 k4 = u(x4);
        const Vec3 next = x + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!inside(next)) {
            line.termination = Termination::Boundary;
            break;
        }
        line.points.push_back(next);
        x = next;
    }
    return line;
}

void write_grid_csv(const GridField& grid, std::ostream& out) {
    out << "r,theta,phi,u_r,u_theta,u_phi\n";
    for (int i = 0; i < grid.n_r; ++i)
        for (int j = 0; j < grid.n_theta; ++j)
            for (int l = 0; l < grid.n_phi; ++l) {
                const VectorValue& s = grid.at(i, j, l);
                out << fmt(grid.r_at(i)) << ',' << fmt(grid.theta_at(j)) << ','
                    << fmt(grid.phi_at(l)) << ',' << fmt(s.u_r) << ',' << fmt(s.u_theta) << ','
                    << fmt(s.u_phi) << '\n';
            }
    if (!out) throw std::runtime_error("grid CSV write failed");
}

GridField read_grid_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("grid CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "r,theta,phi,u_r,u_theta,u_phi")
        throw std::runtime_error("grid CSV: unexpected header '" + line + "'");

    std::vector<std::array<double, 6>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tokens = split_csv(line);
        if (tokens.size() != 6) throw std::runtime_error("grid CSV: bad row '" + line + "'");
        std::array<double, 6> row;
        for (int c = 0; c < 6; ++c) row[c] = parse_double(tokens[c]);
        rows.push_back(row);
    }
    if (rows.empty()) throw std::runtime_error("grid CSV: no samples");

    // Infer dims from the (r, theta, phi) block structure: phi varies fastest.
    std::size_t n_phi = 1;
    while (n_phi < rows.size() && rows[n_phi][0] == rows[0][0] && rows[n_phi][1] == rows[0][1])
        ++n_phi;
    std::size_t n_theta = 1;
    while (n_theta * n_phi < rows.size() && rows[n_theta * n_phi][0] == rows[0][0]) ++n_theta;
    if (rows.size() % (n_theta * n_phi) != 0)
        throw std::runtime_error("grid CSV: sample count is not a full grid");
    const std::size_t n_r = rows.size() / (n_theta * n_phi);

    GridField grid;
    grid.radius = rows.back()[0];
    grid.n_r = static_cast<int>(n_r);
    grid.n_theta = static_cast<int>(n_theta);
    grid.n_phi = static_cast<int>(n_phi);
    check_dims(grid.n_r, grid.n_theta, grid.n_phi);
    if (!(grid.radius > 0.0)) throw std::runtime_error("grid CSV: nonpositive radius");
    grid.samples.resize(rows.size());
    std::size_t idx = 0;
    for (int i = 0; i < grid.n_r; ++i)
        for (int j = 0; j < grid.n_theta; ++j)
            for (int l = 0; l < grid.n_phi; ++l, ++idx) {
                const auto& row = rows[idx];
                const double scale = std::max(1.0, grid.radius);
                if (std::abs(row[0] - grid.r_at(i)) > 1e-9 * scale ||
                    std::abs(row[1] - grid.theta_at(j)) > 1e-9 ||
                    std::abs(row[2] - grid.phi_at(l)) > 1e-9)
                    throw std::runtime_error("grid CSV: coordinates do not form the expected grid");
                grid.samples[idx] = {row[3], row[4], row[5]};
            }
    return grid;
}

void write_grid_vtk(const GridField& grid, std::ostream& out) {
    const std::size_t n = grid.samples.size();
    out << "# vtk DataFile Version 3.0\n";
    out << "ball grid R=" << fmt(grid.radius) << " dims=" << grid.n_r << ' ' << grid.n_theta
        << ' ' << grid.n_phi << '\n';
    out << "ASCII\nDATASET STRUCTURED_GRID\n";
    out << "DIMENSIONS " << grid.n_phi << ' ' << grid.n_theta << ' ' << grid.n_r << '\n';
    out << "POINTS " << n << " double\n";
    for (int i = 0; i < grid.n_r; ++i)
        for (int j = 0; j < grid.n_theta; ++j)
            for (int l = 0; l < grid.n_phi; ++l) {
                const Vec3 x = to_cartesian({grid.r_at(i), grid.theta_at(j), grid.phi_at(l)});
                out << fmt(x.x) << ' ' << fmt(x.y) << ' ' << fmt(x.z) << '\n';
            }
    out << "POINT_DATA " << n << '\n';
    out << "VECTORS velocity double\n";
    for (int i = 0; i < grid.n_r; ++i)
        for (int j = 0; j < grid.n_theta; ++j)
            for (int l = 0; l < grid.n_phi; ++l) {
                const SphericalPoint p{grid.r_at(i), grid.theta_at(j), grid.phi_at(l)};
                const Vec3 v = frame_to_cartesian(p, grid.at(i, j, l));
                out << fmt(v.x) << ' ' << fmt(v.y) << ' ' << fmt(v.z) << '\n';
            }
    // Exact spherical-frame samples so imports reproduce the field bitwise.
    out << "FIELD FieldData 1\n";
    out << "spherical_samples 3 " << n << " double\n";
    for (const auto& s : grid.samples)
        out << fmt(s.u_r) << ' ' << fmt(s.u_theta) << ' ' << fmt(s.u_phi) << '\n';
    if (!out) throw std::runtime_error("grid VTK write failed");
}

GridField read_grid_vtk(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# vtk DataFile", 0) != 0)
        throw std::runtime_error("grid VTK: missing header");
    if (!std::getline(in, line)) throw std::runtime_error("grid VTK: missing title");

    GridField grid;
    {
        std::istringstream title(line);
        std::string word;
        bool have_r = false, have_dims = false;
        while (title >> word) {
            if (word.rfind("R=", 0) == 0) {
                grid.radius = parse_double(word.substr(2));
                have_r = true;
            } else if (word.rfind("dims=", 0) == 0) {
                grid.n_r = static_cast<int>(parse_double(word.substr(5)));
                title >> grid.n_theta >> grid.n_phi;
                have_dims = true;
            }
        }
        if (!have_r || !have_dims)
            throw std::runtime_error("grid VTK: title lacks R=... dims=... metadata");
    }
    check_dims(grid.n_r, grid.n_theta, grid.n_phi);
    const std::size_t n = static_cast<std::size_t>(grid.n_r) * grid.n_theta * grid.n_phi;

    // Skip ahead to the exact spherical block.
    while (std::getline(in, line)) {
        if (line.rfind("spherical_samples", 0) == 0) break;
    }
    if (in.eof()) throw std::runtime_error("grid VTK: spherical_samples block not found");
    grid.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        VectorValue s;
        if (!(in >> s.u_r >> s.u_theta >> s.u_phi))
            throw std::runtime_error("grid VTK: truncated sample data");
        grid.samples[i] = s;
    }
    return grid;
}

void write_streamline_csv(const Streamline& line, std::ostream& out) {
    out << "# streamline seed=" << fmt(line.seed.x) << ' ' << fmt(line.seed.y) << ' '
        << fmt(line.seed.z) << " step=" << fmt(line.step)
        << " termination=" << termination_name(line.termination) << '\n';
    out << "x,y,z\n";
    for (const auto& p : line.points)
        out << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(p.z) << '\n';
    if (!out) throw std::runtime_error("streamline CSV write failed");
}

namespace {

void parse_streamline_title(const std::string& line, Streamline& sl) {
    std::istringstream title(line);
    std::string word;
    bool have_seed = false, have_step = false, have_term = false;
    while (title >> word) {
        if (word.rfind("seed=", 0) == 0) {
            sl.seed.x = parse_double(word.substr(5));
            title >> sl.seed.y >> sl.seed.z;
            have_seed = true;
        } else if (word.rfind("step=", 0) == 0) {
            sl.step = parse_double(word.substr(5));
            have_step = true;
        } else if (word.rfind("termination=", 0) == 0) {
            sl.termination = termination_from_name(word.substr(12));
            have_term = true;
        }
    }
    if (!have_seed || !have_step || !have_term)
        throw std::runtime_error("streamline: metadata line lacks seed/step/termination");
}

}  // namespace

Streamline read_streamline_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# streamline", 0) != 0)
        throw std::runtime_error("streamline CSV: missing metadata line");
    Streamline sl;
    parse_streamline_title(line, sl);
    if (!std::getline(in, line)) throw std::runtime_error("streamline CSV: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,y,z") throw std::runtime_error("streamline CSV: unexpected header");
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tokens = split_csv(line);
        if (tokens.size() != 3) throw std::runtime_error("streamline CSV: bad row");
        sl.points.push_back(
            {parse_double(tokens[0]), parse_double(tokens[1]), parse_double(tokens[2])});
    }
    return sl;
}

void write_streamline_vtk(const Streamline& line, std::ostream& out) {
    out << "# vtk DataFile Version 3.0\n";
    out << "streamline seed=" << fmt(line.seed.x) << ' ' << fmt(line.seed.y) << ' '
        << fmt(line.seed.z) << " step=" << fmt(line.step)
        << " termination=" << termination_name(line.termination) << '\n';
    out << "ASCII\nDATASET POLYDATA\n";
    out << "POINTS " << line.points.size() << " double\n";
    for (const auto& p : line.points) out << fmt(p.x) << ' ' << fmt(p.y) << ' ' << fmt(p.z) << '\n';
    if (line.points.size() >= 2) {
        out << "LINES 1 " << line.points.size() + 1 << '\n';
        out << line.points.size();
        for (std::size_t i = 0; i < line.points.size(); ++i) out << ' ' << i;
        out << '\n';
    } else {
        out << "LINES 0 0\n";
    }
    if (!out) throw std::runtime_error("streamline VTK write failed");
}

Streamline read_streamline_vtk(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# vtk DataFile", 0) != 0)
        throw std::runtime_error("streamline VTK: missing header");
    if (!std::getline(in, line)) throw std::runtime_error("streamline VTK: missing title");
    Streamline sl;
    parse_streamline_title(line, sl);
    std::size_t n = 0;
    while (std::getline(in, line)) {
        if (line.rfind("POINTS", 0) == 0) {
            std::istringstream hdr(line);
            std::string word;
            hdr >> word >> n;
            break;
        }
    }
    sl.points.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(in >> sl.points[i].x >> sl.points[i].y >> sl.points[i].z))
            throw std::runtime_error("streamline VTK: truncated points");
    }
    return sl;
}

namespace {

enum class FileKind { GridCsv, GridVtk };

FileKind sniff(std::istream& in) {
    const auto pos = in.tellg();
    std::string line;
    std::getline(in, line);
    in.seekg(pos);
    if (line.rfind("# vtk DataFile", 0) == 0) return FileKind::GridVtk;
    return FileKind::GridCsv;
}

}  // namespace

void save_grid(const GridField& grid, const std::string& path, const std::string& format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    if (format == "csv")
        write_grid_csv(grid, out);
    else if (format == "vtk")
        write_grid_vtk(grid, out);
    else
        throw std::invalid_argument("unknown grid format: " + format);
}

GridField load_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return sniff(in) == FileKind::GridVtk ? read_grid_vtk(in) : read_grid_csv(in);
}

void save_streamline(const Streamline& line, const std::string& path, const std::string& format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    if (format == "csv")
        write_streamline_csv(line, out);
    else if (format == "vtk")
        write_streamline_vtk(line, out);
    else
        throw std::invalid_argument("unknown streamline format: " + format);
}

}  // namespace ballmodes::fieldio
