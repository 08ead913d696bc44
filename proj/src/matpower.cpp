#include "sgsim/matpower.hpp"

#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <string>

namespace sgsim {

namespace {

std::string strip_comment(const std::string& line) {
    const auto pos = line.find('%');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

bool parse_number(const std::string& tok, double& out) {
    if (tok == "Inf" || tok == "inf") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    if (tok == "-Inf" || tok == "-inf") {
        out = -std::numeric_limits<double>::infinity();
        return true;
    }
    std::size_t used = 0;
    try {
        out = std::stod(tok, &used);
    } catch (const std::exception&) {
        return false;
    }
    return used == tok.size();
}

/// One numeric matrix row; separators are whitespace, commas and a trailing ';'.
std::vector<double> parse_row(const std::string& text, int line_no) {
    std::vector<double> row;
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        double v = 0.0;
        if (!parse_number(tok, v))
            throw ParseError("malformed matrix entry '" + tok + "'", line_no);
        row.push_back(v);
        tok.clear();
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';' || c == ']') flush();
        else tok += c;
    }
    flush();
    return row;
}

double column(const std::vector<double>& row, std::size_t idx, int line_no, const char* table) {
    if (idx >= row.size())
        throw ParseError(std::string(table) + " row has too few columns", line_no);
    return row[idx];
}

} // namespace

MatpowerCase parse_matpower_case(std::istream& in) {
    MatpowerCase mp;
    bool saw_bus = false, saw_gen = false, saw_branch = false, saw_base = false;

    std::string raw;
    int line_no = 0;
    std::string matrix; // name of the matrix being read, empty outside one
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_comment(raw);

        if (matrix.empty()) {
            // look for "<name> = ..." with an optional mpc. prefix
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string name = line.substr(0, eq);
            name.erase(0, name.find_first_not_of(" \t"));
            const auto end = name.find_last_not_of(" \t");
            name = end == std::string::npos ? "" : name.substr(0, end + 1);
            if (name.rfind("mpc.", 0) == 0) name = name.substr(4);

            std::string rest = line.substr(eq + 1);
            if (name == "baseMVA") {
                std::string tok;
                for (char c : rest)
                    if (!std::isspace(static_cast<unsigned char>(c)) && c != ';') tok += c;
                if (!parse_number(tok, mp.base_mva) || mp.base_mva <= 0.0)
                    throw ParseError("invalid baseMVA value", line_no);
                saw_base = true;
            } else if (name == "bus" || name == "gen" || name == "branch") {
                const auto bracket = rest.find('[');
                if (bracket == std::string::npos) continue; // not a matrix assignment
                matrix = name;
                rest = rest.substr(bracket + 1);
                const bool closes = rest.find(']') != std::string::npos;
                line = rest;
                if (!closes && parse_row(line, line_no).empty()) continue;
                // fall through to consume this first row
            } else {
                continue;
            }
            if (matrix.empty()) continue;
        }

        const bool closes = line.find(']') != std::string::npos;
        const std::vector<double> row = parse_row(line, line_no);
        if (!row.empty()) {
            if (matrix == "bus") {
                MatpowerCase::BusRow b;
                b.id = static_cast<std::int64_t>(column(row, 0, line_no, "bus"));
                b.type = static_cast<int>(column(row, 1, line_no, "bus"));
                b.demand_mw = column(row, 2, line_no, "bus");
                mp.buses.push_back(b);
                saw_bus = true;
            } else if (matrix == "gen") {
                MatpowerCase::GenRow g;
                g.bus = static_cast<std::int64_t>(column(row, 0, line_no, "gen"));
                g.output_mw = column(row, 1, line_no, "gen");
                g.in_service = column(row, 7, line_no, "gen") > 0.0;
                g.pmax_mw = column(row, 8, line_no, "gen");
                g.pmin_mw = column(row, 9, line_no, "gen");
                mp.gens.push_back(g);
                saw_gen = true;
            } else if (matrix == "branch") {
                MatpowerCase::BranchRow br;
                br.from = static_cast<std::int64_t>(column(row, 0, line_no, "branch"));
                br.to = static_cast<std::int64_t>(column(row, 1, line_no, "branch"));
                br.reactance_pu = column(row, 3, line_no, "branch");
                br.rating_mw = column(row, 5, line_no, "branch");
                br.in_service = column(row, 10, line_no, "branch") > 0.0;
                mp.branches.push_back(br);
                saw_branch = true;
            }
        }
        if (closes) matrix.clear();
    }

    if (!saw_base) throw ParseError("missing baseMVA assignment");
    if (!saw_bus) throw ParseError("missing bus matrix");
    if (!saw_gen) throw ParseError("missing gen matrix");
    if (!saw_branch) throw ParseError("missing branch matrix");
    return mp;
}

PowerGrid to_power_grid(const MatpowerCase& mp, bool use_file_ratings) {
    PowerGrid grid(static_cast<int>(mp.buses.size()));
    std::map<std::int64_t, BusId> dense;
    for (std::size_t i = 0; i < mp.buses.size(); ++i) {
        const auto& b = mp.buses[i];
        if (dense.count(b.id)) throw ValidationError("duplicate bus id in bus table");
        dense[b.id] = static_cast<BusId>(i);
        grid.external_ids.push_back(b.id);
        if (b.demand_mw > 0.0) grid.add_demand(static_cast<BusId>(i), b.demand_mw);
    }

    // MATPOWER allows several units at one bus; aggregate them.
    std::map<BusId, MatpowerCase::GenRow> units;
    for (const auto& g : mp.gens) {
        if (!g.in_service) continue;
        const auto it = dense.find(g.bus);
        if (it == dense.end()) throw ValidationError("generator references unknown bus");
        auto& agg = units[it->second];
        agg.output_mw += g.output_mw;
        agg.pmax_mw += g.pmax_mw;
        agg.pmin_mw += std::max(0.0, g.pmin_mw);
    }
    for (const auto& [bus, g] : units)
        grid.add_generator(bus, g.output_mw, std::min(g.pmin_mw, g.pmax_mw), g.pmax_mw);

    for (const auto& br : mp.branches) {
        if (!br.in_service) continue;
        const auto f = dense.find(br.from), t = dense.find(br.to);
        if (f == dense.end() || t == dense.end())
            throw ValidationError("branch references unknown bus");
        if (br.reactance_pu <= 0.0)
            throw ValidationError("in-service branch must have positive reactance");
        double capacity = 0.0;
        if (use_file_ratings)
            capacity = br.rating_mw > 0.0 ? br.rating_mw : 1e15; // 0-rating = unlimited
        grid.add_line(f->second, t->second, br.reactance_pu / mp.base_mva, capacity);
    }
    return grid;
}

PowerGrid parse_matpower(std::istream& in, bool use_file_ratings) {
    return to_power_grid(parse_matpower_case(in), use_file_ratings);
}

} // namespace sgsim
