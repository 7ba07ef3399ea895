"""surveygraph: import literature-survey tables into a knowledge graph.

The pipeline mirrors how a human processes a survey article: load the PDF
(`pdf`), cut the selected region into a cell grid (`extract`), normalize it
into a survey table (`tableops`), resolve each row's citation (`refs`),
and persist everything as a queryable graph (`graph`).  `pipeline` batches
those steps on the command line; `service` exposes them over HTTP for the
interactive wizard.
"""

__version__ = "0.1.0"
