"""Event files and the embedded Tokyo 2020 datasets."""
