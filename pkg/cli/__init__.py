# Command-line front end: document ingestion, dispatch and report rendering
