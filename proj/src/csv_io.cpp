#include "phsf/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

namespace phsf {

std::string format_double(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

std::string format_sig12(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

double parse_double(const std::string& token) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end)
        throw std::invalid_argument("not a number: '" + token + "'");
    return value;
}

double wrap_position(double x, double ring_length) {
    double wrapped = x - ring_length * std::floor(x / ring_length);
    if (wrapped >= ring_length) wrapped = 0.0; // floor rounding at the seam
    return wrapped;
}

Eigen::VectorXd wrapped_positions(const Trajectory& trajectory, long sample,
                                  const Parameters& params) {
    const int n = params.n_agents;
    const State& state = trajectory.states[sample];
    Eigen::VectorXd q(n);
    double position = trajectory.q1_track[sample];
    for (int i = 0; i < n; ++i) {
        q[i] = wrap_position(position, params.ring_length);
        position += state.Q[i];
    }
    return q;
}

std::string trajectory_to_csv(const Trajectory& trajectory, const Parameters& params,
                              const std::string& comment) {
    const int n = params.n_agents;
    std::ostringstream out;
    if (!comment.empty()) out << "# " << comment << "\n";

    out << "t";
    for (int i = 1; i <= n; ++i) out << ",q" << i;
    for (int i = 1; i <= n; ++i) out << ",p" << i;
    out << ",H,pbar\n";

    for (long s = 0; s < trajectory.samples(); ++s) {
        const Eigen::VectorXd q = wrapped_positions(trajectory, s, params);
        out << format_double(trajectory.times[s]);
        for (int i = 0; i < n; ++i) out << ',' << format_sig12(q[i]);
        for (int i = 0; i < n; ++i) out << ',' << format_double(trajectory.states[s].p[i]);
        out << ',' << format_double(trajectory.hamiltonian_track[s]);
        out << ',' << format_double(trajectory.mean_velocity_track[s]);
        out << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

} // namespace

TrajectoryTable trajectory_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;

    std::string header;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        header = line;
        break;
    }
    const auto columns = split_csv_line(header);
    if (columns.size() < 5 || columns.front() != "t" || columns.back() != "pbar")
        throw std::invalid_argument("malformed trajectory CSV header");
    const int n = static_cast<int>((columns.size() - 3) / 2);

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != columns.size())
            throw std::invalid_argument("trajectory CSV row has wrong field count");
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_double(f));
        rows.push_back(std::move(row));
    }

    TrajectoryTable table;
    table.n_agents = n;
    const long samples = static_cast<long>(rows.size());
    table.q.resize(samples, n);
    table.p.resize(samples, n);
    table.t.resize(samples);
    table.hamiltonian.resize(samples);
    table.mean_velocity.resize(samples);
    for (long s = 0; s < samples; ++s) {
        const auto& row = rows[s];
        table.t[s] = row[0];
        for (int i = 0; i < n; ++i) {
            table.q(s, i) = row[1 + i];
            table.p(s, i) = row[1 + n + i];
        }
        table.hamiltonian[s] = row[1 + 2 * n];
        table.mean_velocity[s] = row[2 + 2 * n];
    }
    return table;
}

std::string matrix_to_csv(const Eigen::MatrixXd& m, const std::string& comment) {
    std::ostringstream out;
    if (!comment.empty()) out << "# " << comment << "\n";
    for (long i = 0; i < m.rows(); ++i) {
        for (long j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    return out.str();
}

} // namespace phsf
