"""Host, Monitoring and Execution agents plus reasoning backends."""
