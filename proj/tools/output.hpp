#ifndef DALEMBERT_TOOLS_OUTPUT_HPP
#define DALEMBERT_TOOLS_OUTPUT_HPP

#include <string>
#include <vector>

namespace cli
{

// Comma-separated table; numbers use the shortest round-trip decimal form.
class CsvTable
{
public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double> &values);
  const std::vector<std::string> &header() const { return header_; }
  std::string str() const { return text_; }

private:
  std::vector<std::string> header_;
  std::string text_;
};

std::string format_number(double value);

// Writes to `path`, or to standard output when path is empty. Throws
// std::runtime_error if the file cannot be written.
void write_text(const std::string &path, const std::string &text);

//
// gnuplot scripts reading a CSV file produced by the matching command. Column
// numbers follow the CSV headers.
//
std::string plot_greens(const std::string &csv);
std::string plot_field(const std::string &csv, const std::string &title);
std::string plot_compare(const std::string &csv);
std::string plot_truncation(const std::string &csv, const std::vector<int> &orders);
std::string plot_energy(const std::string &csv);

}  // namespace cli

#endif  // DALEMBERT_TOOLS_OUTPUT_HPP
