#include "pointcast/cloud_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "pointcast/errors.hpp"

namespace pointcast {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_char(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& tok, const char* context) {
    const std::string t = strip(tok);
    double v = 0.0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ParseError(std::string(context) + ": cannot parse number '" + t + "'");
    return v;
}

double parse_finite(const std::string& tok, const char* context) {
    double v = parse_double(tok, context);
    if (!std::isfinite(v)) throw ParseError(std::string(context) + ": non-finite value '" + strip(tok) + "'");
    return v;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct ColumnMap {
    int x = -1, y = -1, z = -1;
    int c0 = -1, c1 = -1, c2 = -1;  // rgb or yuv triple
    bool yuv = false;               // triple is already YUV in [0,1]
    bool byte_scale = false;        // triple is on the 0..255 scale
};

PointCloud assemble(const std::vector<std::array<double, 6>>& rows, bool yuv, bool byte_scale) {
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    PointCloud cloud;
    cloud.coords.resize(3, n);
    Eigen::Matrix3Xd tri(3, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        cloud.coords(0, i) = rows[i][0];
        cloud.coords(1, i) = rows[i][1];
        cloud.coords(2, i) = rows[i][2];
        for (int c = 0; c < 3; ++c) {
            double v = rows[i][3 + c];
            if (byte_scale) v /= 255.0;
            if (v < -1e-9 || v > 1.0 + 1e-9)
                throw ParseError("color channel outside its valid range");
            tri(c, i) = std::clamp(v, 0.0, 1.0);
        }
    }
    cloud.colors = yuv ? tri : rgb_to_yuv(tri);
    validate_cloud(cloud);
    return cloud;
}

// ---------------------------------------------------------------------------
// PLY (ascii)

struct PlyProperty {
    std::string type;
    std::string name;
};

PointCloud load_ply(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip(line) != "ply") throw ParseError("ply: missing magic");
    bool format_seen = false;
    long vertex_count = -1;
    std::vector<PlyProperty> vertex_props;
    std::vector<std::pair<std::string, long>> pre_vertex_elements;  // to skip
    std::string current_element;
    bool in_header = true;
    while (in_header) {
        if (!std::getline(in, line)) throw ParseError("ply: truncated header");
        auto tok = split_ws(line);
        if (tok.empty() || tok[0] == "comment" || tok[0] == "obj_info") continue;
        if (tok[0] == "format") {
            if (tok.size() < 2 || tok[1] != "ascii") throw ParseError("ply: only ascii format supported");
            format_seen = true;
        } else if (tok[0] == "element") {
            if (tok.size() != 3) throw ParseError("ply: malformed element line");
            current_element = tok[1];
            long count = 0;
            try {
                count = std::stol(tok[2]);
            } catch (...) {
                throw ParseError("ply: bad element count");
            }
            if (count < 0) throw ParseError("ply: negative element count");
            if (current_element == "vertex") {
                vertex_count = count;
            } else if (vertex_count < 0) {
                pre_vertex_elements.emplace_back(current_element, count);
            }
            // elements after vertex are ignored entirely
        } else if (tok[0] == "property") {
            if (tok.size() >= 2 && tok[1] == "list") {
                if (current_element == "vertex" || vertex_count < 0)
                    throw ParseError("ply: list properties are unsupported before or in the vertex element");
                continue;  // list property in a trailing element we never read
            }
            if (tok.size() != 3) throw ParseError("ply: malformed property line");
            if (current_element == "vertex") vertex_props.push_back({tok[1], tok[2]});
        } else if (tok[0] == "end_header") {
            in_header = false;
        } else {
            throw ParseError("ply: unknown header line '" + tok[0] + "'");
        }
    }
    if (!format_seen) throw ParseError("ply: missing format line");
    if (vertex_count < 0) throw ParseError("ply: missing vertex element");
    if (vertex_count == 0) throw ParseError("ply: empty vertex element");

    ColumnMap map;
    bool color_is_uchar = false;
    for (size_t i = 0; i < vertex_props.size(); ++i) {
        const std::string& name = vertex_props[i].name;
        const std::string& type = vertex_props[i].type;
        const int col = static_cast<int>(i);
        auto is_float = [&] { return type == "float" || type == "float32" || type == "double" || type == "float64"; };
        auto is_uchar = [&] { return type == "uchar" || type == "uint8"; };
        if (name == "x" || name == "y" || name == "z") {
            if (!is_float()) throw ParseError("ply: coordinate property must be float typed");
            (name == "x" ? map.x : name == "y" ? map.y : map.z) = col;
        } else if (name == "red" || name == "green" || name == "blue") {
            if (!is_float() && !is_uchar()) throw ParseError("ply: color property must be float or uchar");
            if (is_uchar()) color_is_uchar = true;
            (name == "red" ? map.c0 : name == "green" ? map.c1 : map.c2) = col;
        } else if (name == "Y" || name == "U" || name == "V") {
            if (!is_float() && !is_uchar()) throw ParseError("ply: color property must be float or uchar");
            if (is_uchar()) color_is_uchar = true;
            (name == "Y" ? map.c0 : name == "U" ? map.c1 : map.c2) = col;
            map.yuv = true;
        }
        // other scalar properties are skipped column-wise
    }
    if (map.x < 0 || map.y < 0 || map.z < 0) throw ParseError("ply: missing x/y/z properties");
    if (map.c0 < 0 || map.c1 < 0 || map.c2 < 0)
        throw ParseError("ply: missing color properties (red/green/blue or Y/U/V)");
    map.byte_scale = color_is_uchar;

    // skip rows of scalar-only elements declared before vertex
    for (const auto& [name, count] : pre_vertex_elements) {
        for (long i = 0; i < count; ++i)
            if (!std::getline(in, line)) throw ParseError("ply: truncated element '" + name + "'");
    }

    std::vector<std::array<double, 6>> rows;
    rows.reserve(static_cast<size_t>(vertex_count));
    for (long i = 0; i < vertex_count; ++i) {
        if (!std::getline(in, line)) throw ParseError("ply: fewer vertex rows than declared");
        auto tok = split_ws(line);
        if (tok.empty()) {
            --i;  // tolerate blank lines between rows
            continue;
        }
        if (tok.size() != vertex_props.size()) throw ParseError("ply: vertex row token count mismatch");
        std::array<double, 6> row{};
        row[0] = parse_finite(tok[static_cast<size_t>(map.x)], "ply");
        row[1] = parse_finite(tok[static_cast<size_t>(map.y)], "ply");
        row[2] = parse_finite(tok[static_cast<size_t>(map.z)], "ply");
        row[3] = parse_finite(tok[static_cast<size_t>(map.c0)], "ply");
        row[4] = parse_finite(tok[static_cast<size_t>(map.c1)], "ply");
        row[5] = parse_finite(tok[static_cast<size_t>(map.c2)], "ply");
        rows.push_back(row);
    }
    return assemble(rows, map.yuv, map.byte_scale);
}

void write_ply(const PointCloud& cloud, std::ostream& out) {
    const Eigen::Matrix3Xd rgb = yuv_to_rgb(cloud.colors);
    out << "ply\n"
        << "format ascii 1.0\n"
        << "element vertex " << cloud.size() << "\n"
        << "property float x\nproperty float y\nproperty float z\n"
        << "property float red\nproperty float green\nproperty float blue\n"
        << "end_header\n";
    for (Eigen::Index i = 0; i < cloud.size(); ++i) {
        out << fmt(cloud.coords(0, i)) << ' ' << fmt(cloud.coords(1, i)) << ' '
            << fmt(cloud.coords(2, i)) << ' ' << fmt(rgb(0, i)) << ' ' << fmt(rgb(1, i)) << ' '
            << fmt(rgb(2, i)) << '\n';
    }
}

// ---------------------------------------------------------------------------
// PCD (ascii), rgb packed as 0x00RRGGBB

std::uint32_t pack_rgb(double r, double g, double b) {
    auto q = [](double v) {
        return static_cast<std::uint32_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    };
    return (q(r) << 16) | (q(g) << 8) | q(b);
}

PointCloud load_pcd(std::istream& in) {
    std::string line;
    std::vector<std::string> fields;
    std::vector<char> types;
    long points = -1, width = -1, height = -1;
    bool data_ascii = false;
    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty() || line[0] == '#') continue;
        auto tok = split_ws(line);
        const std::string key = tok[0];
        if (key == "FIELDS") {
            fields.assign(tok.begin() + 1, tok.end());
        } else if (key == "TYPE") {
            types.clear();
            for (size_t i = 1; i < tok.size(); ++i) types.push_back(tok[i].empty() ? '?' : tok[i][0]);
        } else if (key == "WIDTH") {
            width = std::stol(tok.at(1));
        } else if (key == "HEIGHT") {
            height = std::stol(tok.at(1));
        } else if (key == "POINTS") {
            points = std::stol(tok.at(1));
        } else if (key == "DATA") {
            if (tok.size() < 2 || tok[1] != "ascii") throw ParseError("pcd: only DATA ascii supported");
            data_ascii = true;
            break;
        }
        // VERSION / SIZE / COUNT / VIEWPOINT accepted and unused
    }
    if (!data_ascii) throw ParseError("pcd: missing DATA ascii section");
    if (points < 0) {
        if (width < 0) throw ParseError("pcd: missing POINTS/WIDTH");
        points = width * std::max<long>(height, 1);
    }
    if (points == 0) throw ParseError("pcd: zero points");

    int ix = -1, iy = -1, iz = -1, irgb = -1;
    for (size_t i = 0; i < fields.size(); ++i) {
        const std::string f = lower(fields[i]);
        if (f == "x") ix = static_cast<int>(i);
        else if (f == "y") iy = static_cast<int>(i);
        else if (f == "z") iz = static_cast<int>(i);
        else if (f == "rgb" || f == "rgba") irgb = static_cast<int>(i);
    }
    if (ix < 0 || iy < 0 || iz < 0 || irgb < 0) throw ParseError("pcd: FIELDS must include x y z rgb");
    const char rgb_type = (static_cast<size_t>(irgb) < types.size()) ? types[static_cast<size_t>(irgb)] : 'U';

    std::vector<std::array<double, 6>> rows;
    rows.reserve(static_cast<size_t>(points));
    for (long i = 0; i < points; ++i) {
        if (!std::getline(in, line)) throw ParseError("pcd: fewer data rows than declared");
        auto tok = split_ws(line);
        if (tok.empty()) {
            --i;
            continue;
        }
        if (tok.size() != fields.size()) throw ParseError("pcd: data row token count mismatch");
        std::array<double, 6> row{};
        row[0] = parse_finite(tok[static_cast<size_t>(ix)], "pcd");
        row[1] = parse_finite(tok[static_cast<size_t>(iy)], "pcd");
        row[2] = parse_finite(tok[static_cast<size_t>(iz)], "pcd");
        std::uint32_t packed = 0;
        const std::string& rgbtok = tok[static_cast<size_t>(irgb)];
        if (rgb_type == 'U' || rgb_type == 'I') {
            double v = parse_finite(rgbtok, "pcd rgb");
            if (v < 0 || v > double(0xFFFFFFFFu) || v != std::floor(v))
                throw ParseError("pcd: packed rgb must be a non-negative integer");
            packed = static_cast<std::uint32_t>(v);
        } else {
            // PCL's legacy convention: the packed integer lives in the float's bits
            const float f = static_cast<float>(parse_double(rgbtok, "pcd rgb"));
            packed = std::bit_cast<std::uint32_t>(f);
        }
        row[3] = static_cast<double>((packed >> 16) & 0xFF);
        row[4] = static_cast<double>((packed >> 8) & 0xFF);
        row[5] = static_cast<double>(packed & 0xFF);
        rows.push_back(row);
    }
    return assemble(rows, /*yuv=*/false, /*byte_scale=*/true);
}

void write_pcd(const PointCloud& cloud, std::ostream& out) {
    const Eigen::Matrix3Xd rgb = yuv_to_rgb(cloud.colors);
    const Eigen::Index n = cloud.size();
    out << "# .PCD v0.7 - Point Cloud Data file format\n"
        << "VERSION 0.7\n"
        << "FIELDS x y z rgb\n"
        << "SIZE 4 4 4 4\n"
        << "TYPE F F F U\n"
        << "COUNT 1 1 1 1\n"
        << "WIDTH " << n << "\n"
        << "HEIGHT 1\n"
        << "VIEWPOINT 0 0 0 1 0 0 0\n"
        << "POINTS " << n << "\n"
        << "DATA ascii\n";
    for (Eigen::Index i = 0; i < n; ++i) {
        out << fmt(cloud.coords(0, i)) << ' ' << fmt(cloud.coords(1, i)) << ' '
            << fmt(cloud.coords(2, i)) << ' ' << pack_rgb(rgb(0, i), rgb(1, i), rgb(2, i)) << '\n';
    }
}

// ---------------------------------------------------------------------------
// CSV, header x,y,z,r,g,b (0..255 color scale) or x,y,z,Y,U,V (unit scale)

PointCloud load_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("csv: empty file");
    auto head = split_char(strip(line), ',');
    for (auto& h : head) h = strip(h);
    bool yuv = false;
    if (head.size() == 6 && lower(head[0]) == "x" && lower(head[1]) == "y" && lower(head[2]) == "z") {
        if (lower(head[3]) == "r" && lower(head[4]) == "g" && lower(head[5]) == "b") {
            yuv = false;
        } else if (head[3] == "Y" && head[4] == "U" && head[5] == "V") {
            yuv = true;
        } else {
            throw ParseError("csv: header must be x,y,z,r,g,b or x,y,z,Y,U,V");
        }
    } else {
        throw ParseError("csv: header must be x,y,z,r,g,b or x,y,z,Y,U,V");
    }

    std::vector<std::array<double, 6>> rows;
    while (std::getline(in, line)) {
        const std::string s = strip(line);
        if (s.empty()) continue;
        auto tok = split_char(s, ',');
        if (tok.size() != 6) throw ParseError("csv: expected 6 columns per row");
        std::array<double, 6> row{};
        for (int c = 0; c < 6; ++c) row[static_cast<size_t>(c)] = parse_finite(tok[static_cast<size_t>(c)], "csv");
        rows.push_back(row);
    }
    if (rows.empty()) throw ParseError("csv: no data rows");
    return assemble(rows, yuv, /*byte_scale=*/!yuv);
}

void write_csv(const PointCloud& cloud, std::ostream& out) {
    const Eigen::Matrix3Xd rgb = yuv_to_rgb(cloud.colors);
    out << "x,y,z,r,g,b\n";
    for (Eigen::Index i = 0; i < cloud.size(); ++i) {
        out << fmt(cloud.coords(0, i)) << ',' << fmt(cloud.coords(1, i)) << ','
            << fmt(cloud.coords(2, i)) << ',' << fmt(rgb(0, i) * 255.0) << ','
            << fmt(rgb(1, i) * 255.0) << ',' << fmt(rgb(2, i) * 255.0) << '\n';
    }
}

}  // namespace

CloudFormat format_from_path(const std::string& path) {
    const auto dot = path.find_last_of('.');
    const std::string ext = dot == std::string::npos ? "" : lower(path.substr(dot + 1));
    if (ext == "ply") return CloudFormat::ply_ascii;
    if (ext == "pcd") return CloudFormat::pcd_ascii;
    if (ext == "csv") return CloudFormat::csv;
    throw IoError("cannot infer cloud format from path '" + path + "'");
}

PointCloud load_cloud(const std::string& path, CloudFormat format) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    switch (format) {
        case CloudFormat::ply_ascii: return load_ply(in);
        case CloudFormat::pcd_ascii: return load_pcd(in);
        case CloudFormat::csv: return load_csv(in);
    }
    throw IoError("unknown format");
}

PointCloud load_cloud(const std::string& path) { return load_cloud(path, format_from_path(path)); }

void write_cloud(const PointCloud& cloud, const std::string& path, CloudFormat format) {
    validate_cloud(cloud);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    switch (format) {
        case CloudFormat::ply_ascii: write_ply(cloud, out); break;
        case CloudFormat::pcd_ascii: write_pcd(cloud, out); break;
        case CloudFormat::csv: write_csv(cloud, out); break;
    }
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

void write_cloud(const PointCloud& cloud, const std::string& path) {
    write_cloud(cloud, path, format_from_path(path));
}

}  // namespace pointcast
