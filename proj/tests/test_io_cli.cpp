int ptloc_placeholder_test_io_cli;
