#include "squares/io.hpp"

#include <fstream>
#include <sstream>

namespace sq {

namespace {

// Next non-empty line with comments stripped; false at end of stream.
bool next_line(std::istream& in, std::string& line, int& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        return true;
    }
    return false;
}

[[noreturn]] void bail(int lineno, const std::string& msg) {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
}

}  // namespace

Config read_config(std::istream& in) {
    std::string line;
    int lineno = 0;
    if (!next_line(in, line, lineno)) throw ParseError("empty configuration input");
    std::istringstream hdr(line);
    std::string magic, version, mode;
    hdr >> magic >> version >> mode;
    if (magic != "squares" || version != "v1") bail(lineno, "expected 'squares v1' header");
    bool labeled;
    if (mode == "unlabeled") labeled = false;
    else if (mode == "labeled") labeled = true;
    else bail(lineno, "mode must be 'unlabeled' or 'labeled'");

    if (!next_line(in, line, lineno)) bail(lineno, "missing module count");
    long n;
    {
        std::istringstream ss(line);
        if (!(ss >> n) || n < 0) bail(lineno, "bad module count");
        std::string rest;
        if (ss >> rest) bail(lineno, "trailing tokens after module count");
    }

    Config c(labeled);
    for (long i = 0; i < n; ++i) {
        if (!next_line(in, line, lineno)) bail(lineno, "expected " + std::to_string(n) + " module lines");
        std::istringstream ss(line);
        try {
            if (labeled) {
                int label, x, y;
                if (!(ss >> label >> x >> y)) bail(lineno, "expected 'label x y'");
                c.add({x, y}, label);
            } else {
                int x, y;
                if (!(ss >> x >> y)) bail(lineno, "expected 'x y'");
                c.add({x, y});
            }
        } catch (const std::logic_error& e) {
            bail(lineno, e.what());
        }
        std::string rest;
        if (ss >> rest) bail(lineno, "trailing tokens on module line");
    }
    if (next_line(in, line, lineno)) bail(lineno, "unexpected trailing content");
    return c;
}

Schedule read_schedule(std::istream& in) {
    std::string line;
    int lineno = 0;
    if (!next_line(in, line, lineno)) throw ParseError("empty schedule input");
    {
        std::istringstream hdr(line);
        std::string magic, version, rest;
        hdr >> magic >> version;
        if (magic != "schedule" || version != "v1" || hdr >> rest)
            bail(lineno, "expected 'schedule v1' header");
    }

    Schedule sched;
    bool in_step = false;
    int expect = 1;
    while (next_line(in, line, lineno)) {
        std::istringstream ss(line);
        std::string kw;
        ss >> kw;
        if (kw == "step") {
            int k;
            std::string rest;
            if (!(ss >> k) || ss >> rest) bail(lineno, "expected 'step k'");
            if (k != expect) bail(lineno, "steps must be numbered consecutively from 1");
            ++expect;
            sched.emplace_back();
            in_step = true;
        } else if (kw == "slide" || kw == "convex") {
            if (!in_step) bail(lineno, "move before first 'step' line");
            int x, y;
            std::string d, rest;
            if (!(ss >> x >> y >> d)) bail(lineno, "expected coordinates and direction");
            Move m;
            m.origin = {x, y};
            if (kw == "slide") {
                m.kind = MoveKind::Slide;
                if (d.size() != 1 || !dir_from_char(d[0], m.d1)) bail(lineno, "bad direction");
            } else {
                m.kind = MoveKind::Convex;
                std::string d2;
                if (!(ss >> d2)) bail(lineno, "convex move needs two directions");
                if (d.size() != 1 || !dir_from_char(d[0], m.d1) || d2.size() != 1 ||
                    !dir_from_char(d2[0], m.d2))
                    bail(lineno, "bad direction");
                if (!perpendicular(m.d1, m.d2)) bail(lineno, "convex directions must be perpendicular");
            }
            if (ss >> rest) bail(lineno, "trailing tokens on move line");
            sched.back().moves.push_back(m);
        } else {
            bail(lineno, "unknown keyword '" + kw + "'");
        }
    }
    return sched;
}

void write_config(std::ostream& out, const Config& c) {
    out << "squares v1 " << (c.labeled() ? "labeled" : "unlabeled") << "\n";
    out << c.size() << "\n";
    if (c.labeled()) {
        std::vector<std::pair<int, Cell>> items(c.labels().begin(), c.labels().end());
        std::sort(items.begin(), items.end());
        for (const auto& [label, cell] : items)
            out << label << " " << cell.x << " " << cell.y << "\n";
    } else {
        for (const Cell& cell : c.sorted_cells()) out << cell.x << " " << cell.y << "\n";
    }
}

void write_schedule(std::ostream& out, const Schedule& s) {
    out << "schedule v1\n";
    for (size_t i = 0; i < s.size(); ++i) {
        out << "step " << i + 1 << "\n";
        for (const Move& m : s[i].moves) {
            if (m.kind == MoveKind::Slide)
                out << "slide " << m.origin.x << " " << m.origin.y << " " << dir_char(m.d1) << "\n";
            else
                out << "convex " << m.origin.x << " " << m.origin.y << " " << dir_char(m.d1) << " "
                    << dir_char(m.d2) << "\n";
        }
    }
}

Config read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    return read_config(f);
}

Schedule read_schedule_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    return read_schedule(f);
}

void write_config_file(const std::string& path, const Config& c) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    write_config(f, c);
}

void write_schedule_file(const std::string& path, const Schedule& s) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    write_schedule(f, s);
}

std::string config_to_string(const Config& c) {
    std::ostringstream ss;
    write_config(ss, c);
    return ss.str();
}

std::string schedule_to_string(const Schedule& s) {
    std::ostringstream ss;
    write_schedule(ss, s);
    return ss.str();
}

}  // namespace sq
