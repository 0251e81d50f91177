#include "output.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace cli
{

std::string format_number(double value)
{
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return ec == std::errc() ? std::string(buf.data(), ptr) : std::string("nan");
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header))
{
  for (std::size_t k = 0; k < header_.size(); ++k)
  {
    text_ += (k ? "," : "") + header_[k];
  }
  text_ += '\n';
}

void CsvTable::add_row(const std::vector<double> &values)
{
  if (values.size() != header_.size())
  {
    throw std::logic_error("CSV row width does not match the header");
  }
  for (std::size_t k = 0; k < values.size(); ++k)
  {
    if (k)
    {
      text_ += ',';
    }
    text_ += format_number(values[k]);
  }
  text_ += '\n';
}

void write_text(const std::string &path, const std::string &text)
{
  if (path.empty())
  {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out)
  {
    throw std::runtime_error("cannot write " + path);
  }
}

namespace
{

std::string Preamble(const std::string &csv)
{
  return "set datafile separator ','\n"
         "data = '" + csv + "'\n";
}

}  // namespace

std::string plot_greens(const std::string &csv)
{
  return Preamble(csv) +
         "set xlabel 't [s]'\n"
         "set ylabel 'Gamma'\n"
         "set key off\n"
         "plot data every ::1 using 1:2 with steps lw 2\n";
}

std::string plot_field(const std::string &csv, const std::string &title)
{
  return Preamble(csv) +
         "set multiplot layout 1,2 title '" + title + "'\n"
         "set xlabel 'x [m]'\n"
         "set ylabel 't [s]'\n"
         "set zlabel 'u'\n"
         "set key off\n"
         "set view 60,30\n"
         "splot data every ::1 using 1:2:3 with points pt 7 ps 0.3 palette\n"
         "set view map\n"
         "splot data every ::1 using 1:2:3 with points pt 5 ps 0.5 palette\n"
         "unset multiplot\n";
}

std::string plot_compare(const std::string &csv)
{
  return Preamble(csv) +
         "set xlabel 'x [m]'\n"
         "set ylabel 't [s]'\n"
         "set cblabel '|engine - oracle|'\n"
         "set view map\n"
         "set key off\n"
         "splot data every ::1 using 1:2:5 with points pt 5 ps 0.5 palette\n";
}

std::string plot_truncation(const std::string &csv, const std::vector<int> &orders)
{
  std::string script = Preamble(csv) +
                       "set xlabel 'x [m]'\n"
                       "set ylabel 'truncation error'\n"
                       "set logscale y\n"
                       "plot ";
  for (std::size_t k = 0; k < orders.size(); ++k)
  {
    script += (k ? ", \\\n     " : "") + std::string("data every ::1 using 1:($") +
              std::to_string(k + 3) + " > 0 ? $" + std::to_string(k + 3) +
              " : 1/0) with linespoints title 'N = " + std::to_string(orders[k]) + "'";
  }
  return script + "\n";
}

std::string plot_energy(const std::string &csv)
{
  return Preamble(csv) +
         "set xlabel 't [s]'\n"
         "set ylabel 'energy'\n"
         "set y2label 'flux'\n"
         "set y2tics\n"
         "plot data every ::1 using 1:2 with lines title 'energy', \\\n"
         "     data every ::1 using 1:3 axes x1y2 with lines title 'flux'\n";
}

}  // namespace cli
