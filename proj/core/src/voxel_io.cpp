#include <sphsym/error.hpp>
#include <sphsym/voxel_io.hpp>

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace sphsym
{
namespace
{
double parse_key(const std::string& line, const std::string& key)
{
        const auto pos = line.find(key + "=");
        if (pos == std::string::npos)
        {
                invalid_argument("voxel file: header is missing '" + key + "='");
        }
        return std::stod(line.substr(pos + key.size() + 1));
}

VoxelSet read_pgm(std::istream& in)
{
        std::string token;
        double h = 0;
        std::vector<long> values;
        std::string line;
        while (std::getline(in, line))
        {
                const auto hash = line.find('#');
                if (hash != std::string::npos)
                {
                        if (line.find("h=", hash) != std::string::npos)
                        {
                                h = parse_key(line.substr(hash), "h");
                        }
                        line = line.substr(0, hash);
                }
                std::istringstream words(line);
                long x;
                while (words >> x)
                {
                        values.push_back(x);
                }
                if (words.fail() && !words.eof())
                {
                        invalid_argument("voxel file: non-numeric PGM content");
                }
        }
        if (values.size() < 3)
        {
                invalid_argument("voxel file: truncated PGM header");
        }
        if (!(h > 0))
        {
                invalid_argument("voxel file: PGM must carry a '# h=<spacing>' comment");
        }
        const long w = values[0];
        const long ht = values[1];
        const long maxval = values[2];
        if (w < 1 || ht < 1 || maxval < 1 || static_cast<long>(values.size()) != 3 + w * ht)
        {
                invalid_argument("voxel file: PGM size does not match its pixel data");
        }
        std::vector<std::uint8_t> occ(static_cast<std::size_t>(w * ht));
        for (long j = 0; j < ht; ++j)
        {
                for (long i = 0; i < w; ++i)
                {
                        occ[static_cast<std::size_t>(j * w + i)] = 2 * values[3 + j * w + i] > maxval ? 1 : 0;
                }
        }
        return VoxelSet(2, h, {static_cast<int>(w), static_cast<int>(ht), 1}, std::move(occ));
}

VoxelSet read_csv(std::istream& in, const std::string& header)
{
        const double h = parse_key(header, "h");
        const int nx = static_cast<int>(parse_key(header, "nx"));
        const int ny = static_cast<int>(parse_key(header, "ny"));
        const int nz = static_cast<int>(parse_key(header, "nz"));
        if (nx < 1 || ny < 1 || nz < 1)
        {
                invalid_argument("voxel file: non-positive grid size in CSV header");
        }
        std::vector<std::uint8_t> occ;
        occ.reserve(static_cast<std::size_t>(nx) * ny * nz);
        std::string line;
        while (std::getline(in, line))
        {
                if (line.empty() || line[0] == '#')
                {
                        continue;
                }
                std::istringstream cells(line);
                std::string cell;
                int count = 0;
                while (std::getline(cells, cell, ','))
                {
                        occ.push_back(std::stoi(cell) != 0 ? 1 : 0);
                        ++count;
                }
                if (count != nx)
                {
                        invalid_argument("voxel file: CSV row with " + std::to_string(count) + " cells, expected "
                                         + std::to_string(nx));
                }
        }
        return VoxelSet(3, h, {nx, ny, nz}, std::move(occ));
}
}

void write_voxels(std::ostream& out, const VoxelSet& v)
{
        const auto& d = v.dims();
        out << std::setprecision(17);
        if (v.dimension() == 2)
        {
                out << "P2\n# h=" << v.spacing() << "\n" << d[0] << " " << d[1] << "\n1\n";
                for (int j = 0; j < d[1]; ++j)
                {
                        for (int i = 0; i < d[0]; ++i)
                        {
                                out << (i ? " " : "") << (v.at(i, j, 0) ? 1 : 0);
                        }
                        out << "\n";
                }
                return;
        }
        out << "# n=3 h=" << v.spacing() << " nx=" << d[0] << " ny=" << d[1] << " nz=" << d[2] << "\n";
        for (int k = 0; k < d[2]; ++k)
        {
                if (k)
                {
                        out << "\n";
                }
                for (int j = 0; j < d[1]; ++j)
                {
                        for (int i = 0; i < d[0]; ++i)
                        {
                                out << (i ? "," : "") << (v.at(i, j, k) ? 1 : 0);
                        }
                        out << "\n";
                }
        }
}

VoxelSet read_voxels(std::istream& in)
{
        std::string first;
        if (!std::getline(in, first))
        {
                invalid_argument("voxel file: empty input");
        }
        if (first.rfind("P2", 0) == 0)
        {
                std::stringstream rest;
                rest << first.substr(2) << "\n" << in.rdbuf();
                return read_pgm(rest);
        }
        if (first.rfind("#", 0) == 0 && first.find("n=3") != std::string::npos)
        {
                return read_csv(in, first);
        }
        invalid_argument("voxel file: expected a P2 PGM or a '# n=3' CSV header");
}

void save_voxels(const std::string& path, const VoxelSet& v)
{
        std::ofstream out(path);
        if (!out)
        {
                invalid_argument("cannot open " + path + " for writing");
        }
        write_voxels(out, v);
}

VoxelSet load_voxels(const std::string& path)
{
        std::ifstream in(path);
        if (!in)
        {
                invalid_argument("cannot open " + path);
        }
        return read_voxels(in);
}
}
