from saix.bench import tune_allocator

# keep large freed numpy buffers on the heap so timing-sensitive tests
# are not dominated by per-build page-fault churn
tune_allocator()
