#include "tcmi/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "tcmi/errors.hpp"

namespace tcmi {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream stream(line);
    while (std::getline(stream, cell, ',')) {
        // Trim surrounding whitespace so "a, 1.0" parses like "a,1.0".
        const auto first = cell.find_first_not_of(" \t\r");
        const auto last = cell.find_last_not_of(" \t\r");
        cells.push_back(first == std::string::npos ? std::string{}
                                                   : cell.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

} // namespace

Dataset load_csv(const std::string& path, const std::string& target_name) {
    std::ifstream file(path);
    if (!file) {
        throw input_error("cannot open file: " + path);
    }

    std::string line;
    if (!std::getline(file, line)) {
        throw input_error("empty file: " + path);
    }
    const std::vector<std::string> header = split_line(line);
    if (header.empty()) {
        throw input_error("empty file: " + path);
    }
    std::size_t target_index = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c].empty()) {
            throw input_error("empty column name");
        }
        for (std::size_t other = 0; other < c; ++other) {
            if (header[other] == header[c]) {
                throw input_error("duplicate column: " + header[c]);
            }
        }
        if (header[c] == target_name) {
            target_index = c;
        }
    }
    if (target_index == header.size()) {
        throw input_error("target not found: " + target_name);
    }

    std::vector<Dataset::Column> columns(header.size());
    std::size_t row = 0;
    while (std::getline(file, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        ++row;
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size()) {
            throw input_error("parse error at row " + std::to_string(row) + ": expected " +
                              std::to_string(header.size()) + " cells, found " +
                              std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            std::size_t consumed = 0;
            double value = 0.0;
            bool ok = !cells[c].empty();
            if (ok) {
                try {
                    value = std::stod(cells[c], &consumed);
                } catch (const std::exception&) {
                    ok = false;
                }
            }
            if (!ok || consumed != cells[c].size()) {
                throw input_error("parse error at row " + std::to_string(row) + ", column " +
                                  header[c]);
            }
            columns[c].push_back(value);
        }
    }
    if (row < 3) {
        throw input_error("too few samples");
    }

    std::vector<Dataset::NamedColumn> features;
    features.reserve(header.size() - 1);
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c != target_index) {
            features.emplace_back(header[c], std::move(columns[c]));
        }
    }
    return Dataset(target_name, std::move(columns[target_index]), std::move(features));
}

void save_csv(const Dataset& dataset, std::ostream& out) {
    out << dataset.target_name();
    for (std::size_t f = 0; f < dataset.n_features(); ++f) {
        out << ',' << dataset.feature_name(f);
    }
    out << '\n';

    char buf[64];
    for (std::size_t i = 0; i < dataset.n_rows(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", dataset.target()[i]);
        out << buf;
        for (std::size_t f = 0; f < dataset.n_features(); ++f) {
            std::snprintf(buf, sizeof(buf), "%.17g", dataset.feature(f)[i]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

void save_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream file(path);
    if (!file) {
        throw input_error("cannot create file: " + path);
    }
    save_csv(dataset, file);
    if (!file) {
        throw input_error("write failed: " + path);
    }
}

} // namespace tcmi
