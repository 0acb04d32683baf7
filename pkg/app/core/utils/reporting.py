import os

import tablib


class ReportGen:
    """ Writes tabular artifacts (tables, path polylines) as CSV and JSON through tablib """

    def __init__(self, settings, report_dir=None):
        self.report_dir = report_dir if report_dir else settings.REPORTS_DIRECTORY

    @classmethod
    def prepare_data(cls, headers, *raw_data, **kwargs) -> tablib.Dataset:
        # headers = ('k', 'computed', 'printed')
        # data = [(0, '4.19e-3', '4.193e-3'), ...] or a list of dicts keyed by the headers
        title = kwargs.get("title", None)
        data = tablib.Dataset(headers=list(headers), title=title) if title else tablib.Dataset(headers=list(headers))
        for row in raw_data:
            if isinstance(row, dict):
                data.append([_cell(row.get(h)) for h in headers])
            else:
                data.append([_cell(v) for v in row])
        return data

    def _path(self, filename: str, ext: str) -> str:
        os.makedirs(self.report_dir, exist_ok=True)
        return os.path.join(self.report_dir, f"{filename}.{ext}")

    def download_csv(self, filename, headers, *data) -> str:
        data = self.prepare_data(headers, *data)
        text = data.export("csv", lineterminator="\n")
        with open(self._path(filename, "csv"), "w", newline="") as f:
            f.write(text)
        return text

    def download_json(self, filename, headers, *data) -> str:
        data = self.prepare_data(headers, *data)
        text = data.export("json")
        with open(self._path(filename, "json"), "w") as f:
            f.write(text)
        return text

    @classmethod
    def render(cls, fmt: str, headers, *data) -> str:
        """ In-memory export for stdout """
        return cls.prepare_data(headers, *data).export(fmt, **({"lineterminator": "\n"} if fmt == "csv" else {}))


def _cell(value):
    return "" if value is None else value
