import csv
from contextlib import nullcontext
from pathlib import Path
from typing import NamedTuple, TextIO, Tuple

import numpy as np
from numpy.typing import NDArray


class HeightSample(NamedTuple):
    """
    Height functions of independent replicas at a list of query points

    Attributes:
        queries: Sites x for ASEP, pairs (M, N) for the six-vertex model
        values: Integer heights, one row per replica and one column per query
    """

    queries: Tuple
    values: NDArray

    def column(self, query) -> NDArray:
        """
        :param query: One of the query points
        :return: The heights of all replicas at the query
        """
        return self.values[:, self.queries.index(query)]

    def write_csv(self, target: Path | str | TextIO) -> None:
        """
        Writes the rows 'replica,query,height', six-vertex queries written as 'M:N'

        :param target: Output file or open text stream
        """
        labels = [q if np.isscalar(q) else ":".join(str(v) for v in q) for q in self.queries]
        if isinstance(target, (str, Path)):
            opened = open(target, "w", encoding="utf-8", newline="")
        else:
            opened = nullcontext(target)
        with opened as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["replica", "query", "height"])
            for replica, row in enumerate(self.values):
                for label, height in zip(labels, row):
                    writer.writerow([replica, label, int(height)])
