#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mzsim/csv.hpp"
#include "mzsim/error.hpp"

namespace mzsim::cli {

const DeviceConfig &Context::device() {
    if (!loaded_) {
        device_ = config_path.empty() ? DeviceConfig::defaults()
                                      : load_device_config(config_path);
        loaded_ = true;
    }
    return device_;
}

std::string out_path(const Context &ctx, const std::string &name) {
    std::filesystem::path dir(ctx.outdir.empty() ? "." : ctx.outdir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ValidationError("cannot create output directory: " + dir.string());
    }
    return (dir / name).string();
}

std::vector<double> linspace(double from, double to, int points) {
    if (points < 2) {
        throw InvalidParameterError("points: need at least 2 samples");
    }
    std::vector<double> out(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i) {
        out[static_cast<size_t>(i)] = from + (to - from) * i / (points - 1);
    }
    return out;
}

namespace {

std::string fmt_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_unitary_csv(const std::string &path, const Unitary &u) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot open for writing: " + path);
    }
    out << "row,col,re,im\n";
    for (int i = 0; i < u.dim(); ++i) {
        for (int j = 0; j < u.dim(); ++j) {
            out << i << "," << j << "," << fmt_exact(u(i, j).real()) << ","
                << fmt_exact(u(i, j).imag()) << "\n";
        }
    }
}

Unitary read_unitary_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open unitary file: " + path);
    }
    std::string line;
    if (!read_csv_line(in, line) || split_csv_line(line) !=
            std::vector<std::string>{"row", "col", "re", "im"}) {
        throw CsvFormatError(path + ": expected header row,col,re,im");
    }
    struct Entry {
        int row, col;
        Complex value;
    };
    std::vector<Entry> entries;
    int max_index = -1;
    while (read_csv_line(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4) {
            throw CsvFormatError(path + ": expected 4 fields, got " +
                                 std::to_string(fields.size()));
        }
        int row = static_cast<int>(parse_double_field(fields[0], "row"));
        int col = static_cast<int>(parse_double_field(fields[1], "col"));
        if (row < 0 || col < 0) {
            throw CsvFormatError(path + ": negative matrix index");
        }
        entries.push_back({row, col,
                           Complex(parse_double_field(fields[2], "re"),
                                   parse_double_field(fields[3], "im"))});
        max_index = std::max(max_index, std::max(row, col));
    }
    int n = max_index + 1;
    if (n < 1 || entries.size() != static_cast<size_t>(n) * n) {
        throw CsvFormatError(path + ": expected a full " + std::to_string(n) +
                             "x" + std::to_string(n) + " matrix");
    }
    Matrix m = Matrix::Zero(n, n);
    for (const auto &e : entries) m(e.row, e.col) = e.value;
    return Unitary::from_matrix(m);
}

}  // namespace mzsim::cli
