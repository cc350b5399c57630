#include "lamerecon/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lamerecon/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "LFLD writer assumes a little-endian host");

namespace lamerecon {

namespace {

constexpr char kMagic[6] = {'L', 'F', 'L', 'D', '1', '\n'};

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

} // namespace

void write_lfld(const std::string& path, const Field& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("write_lfld: cannot open " + path);
    os.write(kMagic, sizeof(kMagic));
    const Grid& g = f.grid();
    put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim()));
    for (int a = 0; a < g.dim(); ++a) put<std::uint32_t>(os, static_cast<std::uint32_t>(g.extent(a)));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(f.components()));
    put<std::uint8_t>(os, f.is_complex() ? 1 : 0);
    for (int a = 0; a < g.dim(); ++a) put<double>(os, g.origin(a));
    for (int a = 0; a < g.dim(); ++a) put<double>(os, g.spacing(a));
    os.write(reinterpret_cast<const char*>(f.values().data()),
             static_cast<std::streamsize>(f.value_count() * sizeof(double)));
    if (!os) throw IoError("write_lfld: short write to " + path);
}

Field read_lfld(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("read_lfld: cannot open " + path);
    char magic[6];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw IoError("read_lfld: bad magic in " + path);
    auto dim = static_cast<int>(get<std::uint32_t>(is));
    if (dim != 2 && dim != 3) throw IoError("read_lfld: bad dim in " + path);
    Index3 extents{1, 1, 1};
    for (int a = 0; a < dim; ++a) extents[a] = static_cast<int>(get<std::uint32_t>(is));
    auto components = static_cast<int>(get<std::uint32_t>(is));
    bool is_complex = get<std::uint8_t>(is) != 0;
    Point3 origin{0, 0, 0}, spacing{1, 1, 1};
    for (int a = 0; a < dim; ++a) origin[a] = get<double>(is);
    for (int a = 0; a < dim; ++a) spacing[a] = get<double>(is);
    if (!is) throw IoError("read_lfld: truncated header in " + path);
    Grid g(dim, extents, origin, spacing);
    Field f(g, Field::rank_for(components, dim), components, is_complex);
    is.read(reinterpret_cast<char*>(f.values().data()),
            static_cast<std::streamsize>(f.value_count() * sizeof(double)));
    if (!is) throw IoError("read_lfld: truncated payload in " + path);
    return f;
}

void write_csv(const std::string& path, const Field& f) {
    const Grid& g = f.grid();
    if (g.point_count() > 256ull * 256ull)
        throw ContractViolation("write_csv: grid larger than 256^2 points");
    std::ofstream os(path);
    if (!os) throw IoError("write_csv: cannot open " + path);
    os << std::setprecision(17);
    for (int a = 0; a < g.dim(); ++a) os << "x" << a + 1 << ",";
    for (int c = 0; c < f.components(); ++c) {
        if (f.is_complex())
            os << "re" << c << ",im" << c << (c + 1 < f.components() ? "," : "");
        else
            os << "c" << c << (c + 1 < f.components() ? "," : "");
    }
    os << "\n";
    for (std::size_t p = 0; p < g.point_count(); ++p) {
        Point3 x = g.point(p);
        for (int a = 0; a < g.dim(); ++a) os << x[a] << ",";
        for (int c = 0; c < f.components(); ++c)
            for (int lane = 0; lane < f.lanes(); ++lane)
                os << f.at(p, c, lane)
                   << ((c + 1 == f.components() && lane + 1 == f.lanes()) ? "" : ",");
        os << "\n";
    }
}

std::uint64_t hash_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("hash_file: cannot open " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[4096];
    while (is) {
        is.read(buf, sizeof(buf));
        for (std::streamsize i = 0; i < is.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    return h;
}

} // namespace lamerecon
