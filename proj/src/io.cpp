#include "lph/io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>

#include <json.hpp>

namespace lph {

static_assert(std::endian::native == std::endian::little,
              "gfn writer assumes a little-endian host");
static_assert(sizeof(cplx) == 16, "gfn writer assumes packed complex<double>");

void write_gfn(const std::filesystem::path& path, const GridFunction& f) {
    nlohmann::ordered_json header;
    header["d"] = f.spec.dim;
    header["n"] = f.spec.n;
    header["period"] = f.spec.period;
    header["dtype"] = "c128";
    header["layout"] = "row-major";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("write_gfn: cannot open " + path.string());
    out << header.dump() << '\n';
    out.write(reinterpret_cast<const char*>(f.samples.data()),
              static_cast<std::streamsize>(f.samples.size() * sizeof(cplx)));
    if (!out) throw data_error("write_gfn: short write to " + path.string());
}

GridFunction read_gfn(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("read_gfn: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw data_error("read_gfn: missing header");

    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw data_error("read_gfn: bad header: " + std::string(e.what()));
    }
    if (header.value("dtype", "") != "c128" || header.value("layout", "") != "row-major")
        throw data_error("read_gfn: unsupported dtype/layout");

    GridSpec spec(header.at("d").get<int>(), header.at("n").get<int>(),
                  header.at("period").get<double>());
    GridFunction f(spec);
    in.read(reinterpret_cast<char*>(f.samples.data()),
            static_cast<std::streamsize>(f.samples.size() * sizeof(cplx)));
    if (in.gcount() != static_cast<std::streamsize>(f.samples.size() * sizeof(cplx)))
        throw data_error("read_gfn: truncated payload in " + path.string());
    if (!all_finite(f)) throw data_error("read_gfn: non-finite samples in " + path.string());
    return f;
}

}  // namespace lph
