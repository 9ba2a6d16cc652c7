#include "core/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "core/common.hpp"

namespace ann {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else if (ch != '\r') {
            current += ch;
        }
    }
    fields.push_back(current);
    return fields;
}

bool parse_double(const std::string& field, double& out) {
    const char* begin = field.c_str();
    char* end = nullptr;
    errno = 0;
    out = std::strtod(begin, &end);
    if (end == begin || errno == ERANGE) return false;
    while (*end == ' ' || *end == '\t') ++end;
    return *end == '\0';
}

bool parse_label(const std::string& field, std::int32_t& out) {
    const char* begin = field.c_str();
    char* end = nullptr;
    errno = 0;
    const long long value = std::strtoll(begin, &end, 10);
    if (end == begin || errno == ERANGE) return false;
    while (*end == ' ' || *end == '\t') ++end;
    if (*end != '\0') return false;
    out = static_cast<std::int32_t>(value);
    return true;
}

bool blank(const std::string& line) {
    for (char ch : line)
        if (ch != ' ' && ch != '\t' && ch != '\r') return false;
    return true;
}

}  // namespace

PointSet load_points_csv(const std::string& path, bool with_labels) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");

    std::vector<double> coords;
    std::vector<std::int32_t> labels;
    std::int64_t dim = -1;
    std::int64_t rows = 0;
    std::string line;
    std::int64_t line_number = 0;
    bool first_content_line = true;

    while (std::getline(in, line)) {
        ++line_number;
        if (blank(line)) continue;
        const std::vector<std::string> fields = split_fields(line);

        if (first_content_line) {
            double probe;
            if (!parse_double(fields.front(), probe)) {
                first_content_line = false;  // header line, skip it
                continue;
            }
            first_content_line = false;
        }

        const auto total = static_cast<std::int64_t>(fields.size());
        const std::int64_t point_fields = with_labels ? total - 1 : total;
        if (point_fields < 1)
            throw DataError(path + ": line " + std::to_string(line_number) + ": no coordinates");
        if (dim < 0) dim = point_fields;
        if (point_fields != dim)
            throw DataError(path + ": line " + std::to_string(line_number) + ": expected " +
                            std::to_string(with_labels ? dim + 1 : dim) + " fields, got " +
                            std::to_string(total));

        for (std::int64_t j = 0; j < dim; ++j) {
            double value;
            if (!parse_double(fields[static_cast<std::size_t>(j)], value))
                throw DataError(path + ": line " + std::to_string(line_number) +
                                ": field " + std::to_string(j + 1) + " is not a number");
            if (!std::isfinite(value))
                throw DataError(path + ": line " + std::to_string(line_number) +
                                ": non-finite value");
            coords.push_back(value);
        }
        if (with_labels) {
            std::int32_t label;
            if (!parse_label(fields.back(), label))
                throw DataError(path + ": line " + std::to_string(line_number) +
                                ": label is not an integer");
            if (label < 0)
                throw DataError(path + ": line " + std::to_string(line_number) +
                                ": label is negative");
            labels.push_back(label);
        }
        ++rows;
    }
    if (rows == 0) throw DataError(path + ": no data rows");
    return PointSet(std::move(coords), rows, dim, std::move(labels));
}

void save_points_csv(const PointSet& points, const std::string& path, bool write_labels) {
    if (write_labels && !points.has_labels())
        throw ArgumentError("save_points_csv: point set has no labels");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    char buffer[40];
    for (std::int64_t i = 0; i < points.size(); ++i) {
        std::string row;
        for (std::int64_t j = 0; j < points.dim(); ++j) {
            std::snprintf(buffer, sizeof(buffer), "%.17g", points.row(i)[j]);
            if (j > 0) row += ',';
            row += buffer;
        }
        if (write_labels) {
            row += ',';
            row += std::to_string(points.labels()[static_cast<std::size_t>(i)]);
        }
        row += '\n';
        out << row;
    }
    if (!out) throw DataError("write failed for '" + path + "'");
}

}  // namespace ann
